import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrpc_ring.errors import GenerationTimeout, NonUnit, ReducibleModulus
from lrpc_ring.galois_ring import GaloisRing, ext_gamma, ext_gamma_inverse, is_irreducible_mod_p, make_galois_ring


def naive_mul(a, b, h, q):
    """Schoolbook product followed by long division by the monic h."""
    m = len(h) - 1
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += int(x) * int(y)
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] -= c * h[i]
    return [x % q for x in prod[:m]]


def poly_divides(d, f, p):
    """Whether d divides f over F_p (coefficient lists, constant first)."""
    f = list(f)
    inv = pow(d[-1], -1, p)
    for k in range(len(f) - len(d), -1, -1):
        c = f[k + len(d) - 1] * inv % p
        if c:
            for i, x in enumerate(d):
                f[k + i] = (f[k + i] - c * x) % p
    return not any(f[: len(d) - 1])


def test_small_ring_products(gr4_2):
    x = gr4_2.gen()
    assert gr4_2.mul(x, x).tolist() == [3, 3]
    assert gr4_2.inverse(x).tolist() == [3, 3]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mul_matches_schoolbook(seed):
    rng = np.random.default_rng(seed)
    R = make_galois_ring(2, 2, 7, rng=rng)
    a, b, c = R.random(rng, 3)
    assert R.mul(a, b).tolist() == naive_mul(a, b, R.h, R.q)
    assert np.array_equal(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)))
    assert np.array_equal(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)))
    assert np.array_equal(b @ R.mul_matrix(a) % R.q, R.mul(a, b))


def test_inverse_exhaustive_q4_m2(gr4_2):
    R = gr4_2
    elems = [np.array(c) for c in itertools.product(range(4), repeat=2)]
    one = R.one().tolist()
    units = 0
    for a in elems:
        partners = [b for b in elems if R.mul(a, b).tolist() == one]
        assert R.is_unit(a) == bool(partners)
        if partners:
            units += 1
            assert R.inverse(a).tolist() == partners[0].tolist()
        else:
            with pytest.raises(NonUnit):
                R.inverse(a)
    assert units == R.unit_count() == 12


@pytest.mark.parametrize("p,r,m", [(2, 3, 5), (3, 2, 4), (2, 2, 20), (5, 3, 3)])
def test_inverse_lifts(p, r, m):
    rng = np.random.default_rng(7)
    R = make_galois_ring(p, r, m, rng=rng)
    for _ in range(20):
        a = R.random_unit(rng)
        assert np.array_equal(R.mul(a, R.inverse(a)), R.one())


def test_irreducibility_degree_20_by_trial_division():
    rng = np.random.default_rng(3)
    R = make_galois_ring(2, 2, 20, rng=rng)
    h2 = [c % 2 for c in R.h]
    # no factor of degree 1..10 over F_2
    for deg in range(1, 11):
        for low in itertools.product(range(2), repeat=deg):
            assert not poly_divides(list(low) + [1], h2, 2)


def test_irreducibility_small_cases():
    assert is_irreducible_mod_p([1, 1, 1], 2)
    assert not is_irreducible_mod_p([1, 0, 1], 2)
    assert is_irreducible_mod_p([1, 0, 1], 3)
    with pytest.raises(ReducibleModulus):
        GaloisRing(2, 2, (1, 0, 1))


def test_make_ring_is_seeded_and_bounded():
    a = make_galois_ring(2, 2, 20, rng=np.random.default_rng(5))
    b = make_galois_ring(2, 2, 20, rng=np.random.default_rng(5))
    assert a == b and hash(a) == hash(b)
    with pytest.raises(GenerationTimeout):
        make_galois_ring(2, 2, 20, rng=np.random.default_rng(5), max_attempts=0)


def test_valuation_decompose(gr4_3):
    R = gr4_3
    a = R.element([2, 0, 2])
    j, u = R.valuation_decompose(a)
    assert j == 1 and R.is_unit(u)
    assert np.array_equal(R.mul(R.p_power(j), u), a)


def test_gamma_roundtrip(gr4_3):
    v = gr4_3.random(np.random.default_rng(1), 5)
    A = ext_gamma(v)
    assert A.shape == (3, 5)
    assert np.array_equal(ext_gamma_inverse(A), v)
