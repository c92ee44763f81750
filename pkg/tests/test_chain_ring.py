import numpy as np
import pytest
from hypothesis import given, strategies as st

from lrpc_ring.chain_ring import ChainRing, is_prime
from lrpc_ring.errors import NonUnit, ZeroInput


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 2)])
def test_units_and_count(p, r):
    R = ChainRing(p, r)
    brute = [a for a in range(R.q) if any(a * b % R.q == 1 for b in range(R.q))]
    assert R.units() == brute
    assert R.unit_count() == len(brute) == R.q - R.q // p


def test_rejects_non_prime_and_bad_exponent():
    with pytest.raises(ValueError):
        ChainRing(4, 2)
    with pytest.raises(ValueError):
        ChainRing(2, 0)
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (5, 2)]), st.integers(0, 10**6))
def test_valuation_decompose(pr, seed):
    R = ChainRing(*pr)
    a = seed % R.q
    if a == 0:
        with pytest.raises(ZeroInput):
            R.valuation_decompose(a)
        assert R.valuation(a) == R.r
        return
    j, u = R.valuation_decompose(a)
    assert R.is_unit(u)
    assert R.p**j * u % R.q == a
    assert a % R.p ** (j + 1) != 0


def test_inverse():
    R = ChainRing(3, 2)
    for a in R.units():
        assert a * R.inverse(a) % 9 == 1
    with pytest.raises(NonUnit):
        R.inverse(3)


def test_vectorised_valuation():
    R = ChainRing(2, 3)
    v = R.valuation(np.array([0, 1, 2, 4, 6, 7]))
    assert v.tolist() == [3, 0, 1, 2, 1, 0]
