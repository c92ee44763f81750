import warnings
from fractions import Fraction

import pytest

from oracles import exact_intersection, exact_product, exact_syndrome
from lrpc_ring.bounds import (
    BoundInputs,
    IntermediateRingWarning,
    bound_components,
    bound_intersection_failure,
    bound_overall_failure,
    bound_overall_success,
    bound_product_failure,
    bound_syndrome_failure,
    intermediate_ring_ok,
    smallest_divisor,
)
from lrpc_ring.errors import PreconditionViolated


def standard(t, **kw):
    args = dict(p=2, r=2, m=20, lam=2, n=20, k=8, t=t)
    args.update(kw)
    return BoundInputs(**args)


def rel_err(x, exact: Fraction):
    if exact == 0:
        return abs(x)
    return abs(Fraction(x) - Fraction(exact)) / abs(Fraction(exact))


@pytest.fixture(autouse=True)
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntermediateRingWarning)
        yield


@pytest.mark.parametrize("t", range(1, 8))
def test_matches_exact_rationals_at_standard_parameters(t):
    b = standard(t)
    prod = exact_product(2, 2, 20, 2, t)
    synd = exact_syndrome(2, 2, t, 12)
    inter = exact_intersection(2, 2, 20, 2, t)
    assert rel_err(bound_product_failure(b, clamp=False), prod) <= 1e-12
    assert rel_err(bound_syndrome_failure(b, clamp=False), synd) <= 1e-12
    assert rel_err(bound_intersection_failure(b, clamp=False), inter) <= 1e-12
    assert rel_err(bound_overall_failure(b, clamp=False), prod + synd + inter) <= 1e-12
    assert bound_overall_failure(b) == min(1.0, bound_overall_failure(b, clamp=False))


def test_known_values():
    # 1 - prod_{i<6} (1 - 2^(i-12))
    assert bound_syndrome_failure(standard(3)) == pytest.approx(1.53e-2, rel=2e-3)
    assert bound_syndrome_failure(standard(0)) == 0.0
    assert bound_syndrome_failure(standard(6)) >= 0.5
    assert bound_syndrome_failure(standard(7)) == 1.0


@pytest.mark.parametrize("p,m,lam,t", [(2, 20, 2, 3), (3, 11, 2, 4), (5, 9, 1, 2), (2, 31, 3, 5), (7, 5, 2, 1)])
def test_field_case_formulas(p, m, lam, t):
    b = BoundInputs(p, 1, m, lam, 20, 8, t)
    field_product = Fraction(t * (p**lam - 1)) * Fraction(p) ** (lam * t - m)
    field_inter = Fraction(t * (p**lam - 1)) * Fraction(p) ** (t * lam * (lam + 1) // 2 - m)
    assert bound_product_failure(b, clamp=False) == float(field_product)
    assert bound_intersection_failure(b, clamp=False) == float(field_inter)
    assert field_product <= t * Fraction(p) ** (lam * (t + 1) - m)


def test_lambda_one_makes_product_and_intersection_agree():
    for t in range(1, 10):
        b = BoundInputs(2, 3, 20, 1, 20, 8, t)
        assert bound_product_failure(b) == bound_intersection_failure(b)


def test_monotone_in_t_and_union_structure():
    prev = [0.0] * 4
    for t in range(1, 8):
        b = standard(t)
        comps = bound_components(b)
        overall = bound_overall_failure(b)
        cur = list(comps) + [overall]
        assert all(c >= p_ for c, p_ in zip(cur, prev))
        assert overall >= max(comps)
        assert all(0.0 <= x <= 1.0 for x in cur)
        assert bound_overall_success(b) == 1.0 - overall
        prev = cur
    assert bound_intersection_failure(standard(7), clamp=False) > 1


def test_preconditions_and_underflow():
    with pytest.raises(PreconditionViolated):
        bound_product_failure(standard(10))
    tiny = BoundInputs(2, 3, 4000, 2, 20, 8, 1)
    assert bound_product_failure(tiny) == 0.0
    assert bound_intersection_failure(tiny) == 0.0


def test_intermediate_ring_check():
    assert smallest_divisor(20) == 2 and smallest_divisor(19) == 19
    assert not intermediate_ring_ok(standard(1))
    assert intermediate_ring_ok(standard(1, lam=1))
    assert intermediate_ring_ok(standard(1, m=19))
    with pytest.warns(IntermediateRingWarning):
        warnings.simplefilter("always")
        bound_intersection_failure(standard(2))
