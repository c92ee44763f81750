import numpy as np
import pytest

from lrpc_ring import code as C
from lrpc_ring.decoder import (
    FailureReason,
    check_conditions,
    decode,
    erasure_decode,
    product_with_f,
)
from lrpc_ring.errors import ErasureInconsistent, PreconditionViolated
from lrpc_ring.submodule import Submodule, contains, random_free_submodule, random_vector_with_support


def plant(code, t, rng):
    E = random_free_submodule(code.ring, t, rng)
    e = random_vector_with_support(E, code.n, rng)
    return E, e


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_decode_recovers_planted_codeword(std_code, t):
    code = std_code
    rng = np.random.default_rng(100 + t)
    ok = 0
    for _ in range(60):
        c = C.random_codeword(code, rng)
        E, e = plant(code, t, rng)
        out = decode(code, (c + e) % code.ring.q, t)
        cond = check_conditions(code, E, C.syndrome(code, e))
        if cond.all:
            assert out.success
        if out.success:
            ok += 1
            assert np.array_equal(out.codeword, c) and np.array_equal(out.error, e)
            assert out.status == "Success"
        else:
            assert isinstance(out.reason, FailureReason)
            assert out.status == "Failure"
    assert ok >= 50


def test_zero_error(std_code):
    code = std_code
    c = C.random_codeword(code, np.random.default_rng(0))
    out = decode(code, c, 0)
    assert out.success and np.array_equal(out.codeword, c)


def test_decode_rejects_bad_input(std_code):
    code = std_code
    with pytest.raises(PreconditionViolated):
        decode(code, code.ring.zeros(code.n - 1), 1)
    with pytest.raises(PreconditionViolated):
        decode(code, code.ring.zeros(code.n), 11)


def test_erasure_round_trip_and_perturbation(std_code):
    code = std_code
    ring = code.ring
    rng = np.random.default_rng(5)
    for t in (1, 3, 5):
        E, e = plant(code, t, rng)
        if not check_conditions(code, E, C.syndrome(code, e)).product:
            continue
        s = C.syndrome(code, e)
        assert np.array_equal(erasure_decode(code, E, s), e)
        EF = product_with_f(code, E)
        g = ring.random(rng)
        while contains(EF, g):
            g = ring.random(rng)
        bad = s.copy()
        bad[0] = (bad[0] + g) % ring.q
        with pytest.raises(ErasureInconsistent):
            erasure_decode(code, E, bad)


def test_erasure_preconditions(std_code):
    code = std_code
    ring = code.ring
    s = ring.zeros(code.n - code.k)
    with pytest.raises(PreconditionViolated):
        erasure_decode(code, Submodule(ring, ring.p_power(1)), s)
    with pytest.raises(PreconditionViolated):
        erasure_decode(code, random_free_submodule(ring, 11, np.random.default_rng(0)), s)
    assert not erasure_decode(code, Submodule(ring, ring.zeros((0,))), s).any()
    with pytest.raises(ErasureInconsistent):
        erasure_decode(code, Submodule(ring, ring.zeros((0,))), s + ring.one())


def test_product_condition_fails_beyond_m(std_code):
    code = std_code
    E = random_free_submodule(code.ring, 11, np.random.default_rng(1))
    assert not check_conditions(code, E, code.ring.zeros(code.n - code.k)).product


def test_degenerate_code_fails_on_syndrome_dimension(std_code):
    code = C.degenerate_code(std_code.ring, std_code.f, 20, 8)
    rng = np.random.default_rng(2)
    for t in (2, 3):
        for _ in range(20):
            _, e = plant(code, t, rng)
            out = decode(code, e, t)
            assert out.reason is FailureReason.SYNDROME_DIM
            assert out.diagnostics["dim_S"] <= t + 1
