import numpy as np
import pytest

from lrpc_ring import code as C
from lrpc_ring.errors import EntryOutsideF, PreconditionViolated
from lrpc_ring.linalg import free_rank


def test_std_code_properties(std_code):
    code = std_code
    assert code.flags == {"unique_decoding": True, "max_row_span": True, "unity": True}
    assert C.entries_span_f(code)
    assert code.parity_rank == code.n - code.k
    assert code.H.shape == (12, 20, 20)
    assert code.Hext.shape == (24, 20)


def test_syndrome_matches_ring_matmul(std_code):
    code = std_code
    ring = code.ring
    y = ring.random(np.random.default_rng(0), code.n)
    naive = ring.matmul(y[None], code.H.transpose(1, 0, 2))[0]
    assert np.array_equal(C.syndrome(code, y), naive)


def test_generator_matrix_spans_the_kernel(std_code):
    code = std_code
    G = code.generator_matrix
    assert G.shape == (code.k, code.n, code.ring.m)
    assert free_rank(G, code.ring) == code.k
    rng = np.random.default_rng(1)
    for _ in range(5):
        c = C.random_codeword(code, rng)
        assert not C.syndrome(code, c).any()
    with pytest.raises(ValueError):
        C.encode(code, code.ring.zeros(code.k + 1))


def test_hext_round_trip(std_code):
    code = std_code
    coeffs = C.build_hext_coeffs(code.ring, code.H, code.f)
    assert np.array_equal(coeffs, code.coeffs)
    H = code.H.copy()
    H[0, 0] = code.ring.gen()
    with pytest.raises(EntryOutsideF):
        C.build_hext_coeffs(code.ring, H, code.f)


def test_serialisation_round_trip(std_code, tmp_path):
    path = tmp_path / "code.txt"
    C.save(std_code, path)
    back = C.load(path)
    assert back.ring == std_code.ring
    assert np.array_equal(back.H, std_code.H)
    assert C.dumps(back) == path.read_text()
    with pytest.raises(ValueError):
        C.loads("not a code\n")


def test_generation_is_deterministic():
    params = C.CodeParams(2, 2, 8, 2, 8, 4)
    a = C.generate(params, np.random.default_rng(9))
    b = C.generate(params, np.random.default_rng(9))
    assert C.dumps(a) == C.dumps(b)


def test_generation_preconditions():
    with pytest.raises(PreconditionViolated):
        C.generate(C.CodeParams(2, 2, 20, 1, 20, 8))
    with pytest.raises(PreconditionViolated):
        C.CodeParams(2, 2, 20, 2, 8, 8)


def test_degenerate_code_structure(std_code):
    code = C.degenerate_code(std_code.ring, std_code.f, 20, 8)
    assert C.entries_span_f(code)
    assert C.check_unity(code)
    assert not C.check_max_row_span(code)
    assert np.array_equal(code.H[0, 0], std_code.f[0])
