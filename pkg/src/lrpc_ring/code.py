"""LRPC codes over R_{q,m}: construction, property checks, encoding.

A code is stored through its low-rank basis ``f`` (``lam x m`` coordinates)
and the coefficient grid ``coeffs[i, j, l] = h_{i,j,l}`` with
``H[i, j] = sum_l coeffs[i, j, l] * f[l]``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import (
    EntryOutsideF,
    GenerationTimeout,
    Inconsistent,
    KernelRankMismatch,
    PreconditionViolated,
)
from .galois_ring import GaloisRing, make_galois_ring
from .linalg import free_rank, matmul_mod, matmul_operand, left_kernel, rank, rank_profile, solve_unique
from .submodule import Submodule, random_free_submodule

FORMAT_HEADER = "lrpc-code v1"


@dataclass(frozen=True)
class CodeParams:
    p: int
    r: int
    m: int
    lam: int
    n: int
    k: int
    h: tuple[int, ...] | None = None
    seed: int | None = None

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise PreconditionViolated(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.lam < 1:
            raise PreconditionViolated("lambda must be positive")


class LrpcCode:
    """An LRPC code with parity-check matrix ``H`` whose entries lie in ``span(f)``."""

    def __init__(self, ring: GaloisRing, f, coeffs):
        self.ring = ring
        self.f = np.asarray(f, dtype=ring.dtype) % ring.q
        self.coeffs = np.asarray(coeffs, dtype=ring.dtype) % ring.q
        if self.f.ndim != 2 or self.f.shape[1] != ring.m:
            raise ValueError("f must be a (lambda, m) coordinate array")
        if self.coeffs.ndim != 3 or self.coeffs.shape[2] != len(self.f):
            raise ValueError("coeffs must have shape (n-k, n, lambda)")
        self.lam = len(self.f)
        nk, self.n = self.coeffs.shape[:2]
        self.k = self.n - nk
        if not 0 < self.k < self.n:
            raise PreconditionViolated(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if free_rank(self.f, ring.base) != self.lam:
            raise PreconditionViolated("f is not a free basis")

    @classmethod
    def from_parity_check(cls, ring: GaloisRing, H, f) -> LrpcCode:
        return cls(ring, f, build_hext_coeffs(ring, H, f))

    def __repr__(self) -> str:
        return f"LrpcCode(lam={self.lam}, n={self.n}, k={self.k}, ring={self.ring!r})"

    # ---- derived matrices ----------------------------------------------

    @cached_property
    def H(self) -> np.ndarray:
        """Parity-check matrix, shape ``(n-k, n, m)``."""
        return np.tensordot(self.coeffs, self.f, axes=([2], [0])) % self.ring.q

    @cached_property
    def Hext(self) -> np.ndarray:
        """``(n-k)*lam x n`` matrix over Z_q, rows ordered by (i, l)."""
        nk = self.n - self.k
        return np.ascontiguousarray(self.coeffs.transpose(0, 2, 1).reshape(nk * self.lam, self.n))

    @cached_property
    def H_mul(self) -> np.ndarray:
        """Multiplication matrices of the entries of H, ``(n-k, n, m, m)``."""
        return self.ring.mul_matrix(self.H)

    @cached_property
    def syndrome_matrix(self) -> np.ndarray:
        """``(n*m, (n-k)*m)`` matrix with ``syndrome = y.ravel() @ it mod q`` (see ``matmul_operand``)."""
        nk, n, m = self.n - self.k, self.n, self.ring.m
        M = np.ascontiguousarray(self.H_mul.transpose(1, 2, 0, 3).reshape(n * m, nk * m))
        return matmul_operand(M, self.ring.q)

    @cached_property
    def erasure_matrix(self) -> np.ndarray:
        """``(m, (n-k)*m*n)`` layout of ``H_mul`` used to build erasure systems."""
        nk, n, m = self.n - self.k, self.n, self.ring.m
        M = np.ascontiguousarray(self.H_mul.transpose(2, 0, 3, 1).reshape(m, nk * m * n))
        return matmul_operand(M, self.ring.q)

    @cached_property
    def f_mul(self) -> np.ndarray:
        return self.ring.mul_matrix(self.f)

    @cached_property
    def f_inv_mul(self) -> np.ndarray:
        inv = np.stack([self.ring.inverse(fl) for fl in self.f])
        return self.ring.mul_matrix(inv)

    @cached_property
    def F(self) -> Submodule:
        return Submodule(self.ring, self.f)

    # ---- properties ----------------------------------------------------

    @cached_property
    def flags(self) -> dict[str, bool]:
        return {
            "unique_decoding": check_unique_decoding(self),
            "max_row_span": check_max_row_span(self),
            "unity": check_unity(self),
        }

    @cached_property
    def parity_rank(self) -> int:
        """Rank of H over R_{q,m}."""
        return rank(self.H, self.ring)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """``k x n`` generator matrix over R_{q,m}, spanning the right kernel of H."""
        G = left_kernel(self.H.transpose(1, 0, 2), self.ring)
        if len(G) != self.k or free_rank(G, self.ring) != self.k:
            raise KernelRankMismatch(f"kernel of H is not free of rank {self.k}")
        return G

    def syndrome(self, y) -> np.ndarray:
        return syndrome(self, y)

    def encode(self, u) -> np.ndarray:
        return encode(self, u)


def build_hext_coeffs(ring: GaloisRing, H, f) -> np.ndarray:
    """Coordinates ``h_{i,j,l}`` of each parity-check entry in the basis ``f``."""
    H = np.asarray(H, dtype=ring.dtype) % ring.q
    f = np.asarray(f, dtype=ring.dtype) % ring.q
    nk, n = H.shape[:2]
    basis_cols = np.ascontiguousarray(f.T)
    coeffs = np.zeros((nk, n, len(f)), dtype=ring.dtype)
    for i in range(nk):
        for j in range(n):
            try:
                coeffs[i, j] = solve_unique(basis_cols, H[i, j], ring.base)
            except Inconsistent:
                raise EntryOutsideF(f"H[{i}, {j}] is not in span(f)") from None
    return coeffs


def build_hext(ring: GaloisRing, H, f) -> np.ndarray:
    return LrpcCode(ring, f, build_hext_coeffs(ring, H, f)).Hext


def check_unique_decoding(code: LrpcCode) -> bool:
    if code.lam * (code.n - code.k) < code.n:
        return False
    rk, frk = rank_profile(code.Hext, code.ring.base)
    return rk == frk == code.n


def check_max_row_span(code: LrpcCode) -> bool:
    base = code.ring.base
    return all(free_rank(code.coeffs[i].T, base) == code.lam for i in range(code.n - code.k))


def check_unity(code: LrpcCode) -> bool:
    c = code.coeffs
    return bool(np.all((c == 0) | (c % code.ring.p != 0)))


def entries_span_f(code: LrpcCode) -> bool:
    """Whether the entries of H generate exactly span(f)."""
    return Submodule(code.ring, code.H.reshape(-1, code.ring.m)) == code.F


def generate(params: CodeParams, rng: np.random.Generator | None = None, max_attempts: int = 64) -> LrpcCode:
    """Random code with the unique-decoding, maximal-row-span and unity properties.

    Coefficients are drawn uniformly from the units and zero. A row is redrawn
    until it spans all of ``span(f)``; the whole matrix is redrawn until
    ``Hext`` has full free rank ``n`` and ``H`` has rank ``n-k``.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    lam, n, k = params.lam, params.n, params.k
    if lam * (n - k) < n:
        raise PreconditionViolated(f"lambda={lam} is below n/(n-k) = {n / (n - k):.3f}")
    if lam > params.m:
        raise PreconditionViolated(f"lambda={lam} exceeds m={params.m}")
    ring = make_galois_ring(params.p, params.r, params.m, params.h, rng=rng)
    base = ring.base
    f = random_free_submodule(ring, lam, rng).generators
    choices = np.array([0] + base.units(), dtype=ring.dtype)
    for _ in range(max_attempts):
        coeffs = np.zeros((n - k, n, lam), dtype=ring.dtype)
        for i in range(n - k):
            for _ in range(max_attempts):
                coeffs[i] = choices[rng.integers(0, len(choices), size=(n, lam))]
                if free_rank(coeffs[i].T, base) == lam:
                    break
            else:
                raise GenerationTimeout(f"row {i} never reached the maximal row span")
        code = LrpcCode(ring, f, coeffs)
        if check_unique_decoding(code) and code.parity_rank == n - k:
            return code
    raise GenerationTimeout(f"no valid parity-check matrix in {max_attempts} attempts")


def degenerate_code(ring: GaloisRing, f, n: int, k: int) -> LrpcCode:
    """Parity-check matrix with ``f_1`` on the diagonal and the other basis
    elements in the last row only.

    Its entries still span ``span(f)``, but every syndrome except the last lies
    in ``f_1 * E``, so the syndrome space never reaches dimension ``lam * t``
    for ``t >= 2``.
    """
    f = np.asarray(f)
    lam = len(f)
    nk = n - k
    if nk + lam - 1 > n:
        raise PreconditionViolated("not enough columns to place the remaining basis elements")
    coeffs = np.zeros((nk, n, lam), dtype=ring.dtype)
    for i in range(nk):
        coeffs[i, i, 0] = 1
    for l in range(1, lam):
        coeffs[nk - 1, nk + l - 1, l] = 1
    return LrpcCode(ring, f, coeffs)


def syndrome(code: LrpcCode, y) -> np.ndarray:
    """``y @ H^T`` over R_{q,m}; returns ``(n-k, m)``."""
    y = np.asarray(y, dtype=code.ring.dtype) % code.ring.q
    if y.shape != (code.n, code.ring.m):
        raise ValueError(f"word must have shape ({code.n}, {code.ring.m})")
    s = matmul_mod(y.reshape(-1), code.syndrome_matrix, code.ring.q)
    return s.reshape(code.n - code.k, code.ring.m)


def encode(code: LrpcCode, u) -> np.ndarray:
    """``u @ G`` for a length-``k`` message over R_{q,m}."""
    u = np.asarray(u, dtype=code.ring.dtype) % code.ring.q
    if u.shape != (code.k, code.ring.m):
        raise ValueError(f"message must have shape ({code.k}, {code.ring.m})")
    return code.ring.matmul(u[None], code.generator_matrix)[0]


def random_codeword(code: LrpcCode, rng: np.random.Generator) -> np.ndarray:
    return encode(code, code.ring.random(rng, code.k))


# ---- text serialisation ----------------------------------------------------
#
#   lrpc-code v1
#   p <p>
#   r <r>
#   m <m>
#   h <m+1 coefficients, constant term first>
#   lambda <lam>
#   n <n>
#   k <k>
#   f <m coordinates>                      (lam lines)
#   row <n*lam coefficients h_{i,1,1} h_{i,1,2} ... h_{i,n,lam}>   (n-k lines)


def dumps(code: LrpcCode) -> str:
    ring = code.ring
    out = io.StringIO()
    out.write(FORMAT_HEADER + "\n")
    for key, val in (("p", ring.p), ("r", ring.r), ("m", ring.m)):
        out.write(f"{key} {val}\n")
    out.write("h " + " ".join(map(str, ring.h)) + "\n")
    for key, val in (("lambda", code.lam), ("n", code.n), ("k", code.k)):
        out.write(f"{key} {val}\n")
    for fl in code.f:
        out.write("f " + " ".join(str(int(x)) for x in fl) + "\n")
    for row in code.coeffs:
        out.write("row " + " ".join(str(int(x)) for x in row.reshape(-1)) + "\n")
    return out.getvalue()


def loads(text: str) -> LrpcCode:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or " ".join(lines[0]) != FORMAT_HEADER:
        raise ValueError("missing or unsupported code file header")
    scalars: dict[str, int] = {}
    h = None
    f_rows, c_rows = [], []
    for key, *vals in lines[1:]:
        if key == "h":
            h = [int(v) for v in vals]
        elif key == "f":
            f_rows.append([int(v) for v in vals])
        elif key == "row":
            c_rows.append([int(v) for v in vals])
        elif key in ("p", "r", "m", "lambda", "n", "k"):
            scalars[key] = int(vals[0])
        else:
            raise ValueError(f"unknown key {key!r} in code file")
    ring = GaloisRing(scalars["p"], scalars["r"], h)
    if ring.m != scalars["m"]:
        raise ValueError("modulus degree does not match m")
    n, lam = scalars["n"], scalars["lambda"]
    coeffs = np.array(c_rows, dtype=np.int64).reshape(n - scalars["k"], n, lam)
    return LrpcCode(ring, np.array(f_rows, dtype=np.int64), coeffs)


def save(code: LrpcCode, path) -> None:
    Path(path).write_text(dumps(code))


def load(path) -> LrpcCode:
    return loads(Path(path).read_text())
