"""Linear algebra over a finite chain ring.

Every routine takes the matrix together with its ring, which is either a
:class:`~lrpc_ring.chain_ring.ChainRing` (entries are integers, matrices are
2-d arrays) or a :class:`~lrpc_ring.galois_ring.GaloisRing` (entries are
coefficient vectors, matrices are ``(rows, cols, m)`` arrays). Both rings have
maximal ideal ``(p)``, so minimum-valuation pivoting always succeeds and the
Smith normal form diagonal can be made to consist of exact powers of p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .chain_ring import ChainRing
from .errors import Inconsistent, PreconditionViolated


@dataclass(frozen=True)
class SnfResult:
    """``D == S @ A @ T`` with ``S``, ``T`` invertible and ``D`` diagonal.

    ``valuations`` lists the p-adic valuations of the nonzero diagonal
    entries in order (nondecreasing); entry ``i`` of the diagonal is exactly
    ``p ** valuations[i]``.
    """

    S: np.ndarray
    D: np.ndarray
    T: np.ndarray
    valuations: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.valuations)

    @property
    def free_rank(self) -> int:
        return sum(1 for v in self.valuations if v == 0)


def _fast(ring) -> bool:
    return type(ring) is ChainRing and ring.dtype is np.int64


def _as_matrix(A, ring) -> np.ndarray:
    A = np.array(A, dtype=ring.dtype) % ring.q
    if A.ndim != 2 + ring.elem_ndim:
        raise ValueError(f"expected a matrix over {ring!r}, got shape {A.shape}")
    return A


def _reduce_generic(D, R, C, ring) -> tuple[int, ...]:
    rows, cols = D.shape[:2]
    vals = []
    for k in range(min(rows, cols)):
        v = ring.valuation(D[k:, k:])
        i, j = divmod(int(np.argmin(v)), cols - k)
        jv = int(v[i, j])
        if jv >= ring.r:
            break
        i += k
        j += k
        if i != k:
            D[[k, i]] = D[[i, k]]
            R[[k, i]] = R[[i, k]]
        if j != k:
            D[:, [k, j]] = D[:, [j, k]]
            C[:, [k, j]] = C[:, [j, k]]
        uinv = ring.unit_inverse(ring.divide_p_power(D[k, k], jv))
        D[k] = ring.mul(D[k], uinv)
        R[k] = ring.mul(R[k], uinv)
        if k + 1 < rows:
            f = ring.divide_p_power(D[k + 1:, k], jv)[:, None]
            D[k + 1:] = ring.sub(D[k + 1:], ring.mul(f, D[k][None]))
            R[k + 1:] = ring.sub(R[k + 1:], ring.mul(f, R[k][None]))
        if k + 1 < cols:
            f = ring.divide_p_power(D[k, k + 1:], jv)[None]
            D[:, k + 1:] = ring.sub(D[:, k + 1:], ring.mul(D[:, k][:, None], f))
            C[:, k + 1:] = ring.sub(C[:, k + 1:], ring.mul(C[:, k][:, None], f))
        vals.append(jv)
    return tuple(vals)


def _reduce(D, R, C, ring, generic: bool = False) -> tuple[int, ...]:
    if _fast(ring) and not generic:
        vals = _kernels.snf_reduce(D, R, C, ring.q, ring.p, ring.r)
        return tuple(vals.tolist())
    return _reduce_generic(D, R, C, ring)


def _float_exact(inner: int, q: int) -> bool:
    return inner * (q - 1) ** 2 < 2**53


def matmul_operand(B, q: int) -> np.ndarray:
    """Right operand for repeated :func:`matmul_mod` calls.

    Returns a float64 copy when products against it are exact in double
    precision, so the conversion happens once.
    """
    B = np.asarray(B)
    if B.dtype == np.int64 and _float_exact(B.shape[0], q):
        return B.astype(np.float64)
    return B


def matmul_mod(A, B, q: int) -> np.ndarray:
    """``A @ B mod q`` for integer arrays with entries in ``[0, q)``.

    Uses a float64 product when every partial sum stays below 2**53, which
    is exact there and much faster than numpy's integer matmul. ``B`` may be
    a float64 array from :func:`matmul_operand`.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if B.dtype == np.float64 or (A.dtype == np.int64 and B.dtype == np.int64 and _float_exact(A.shape[-1], q)):
        out = A.astype(np.float64) @ B
        return out.astype(np.int64) % q
    return (A @ B) % q


def _empty_companion(n: int, ring, rows: bool) -> np.ndarray:
    shape = (n, 0) if rows else (0, n)
    return ring.zeros(shape)


def snf(A, ring, *, generic: bool = False) -> SnfResult:
    """Smith normal form with transforms.

    The pivot is the entry of least valuation in the remaining block (first
    in row-major order on ties); it is normalised to an exact power of p and
    cleared from its row and column.

    >>> from lrpc_ring.chain_ring import ChainRing
    >>> snf([[2, 1], [0, 2]], ChainRing(2, 2)).D.tolist()
    [[1, 0], [0, 0]]
    """
    D = _as_matrix(A, ring)
    rows, cols = D.shape[:2]
    S = ring.eye(rows)
    T = ring.eye(cols)
    vals = _reduce(D, S, T, ring, generic)
    return SnfResult(S, D, T, vals)


def diagonal_valuations(A, ring, *, generic: bool = False) -> tuple[int, ...]:
    """Valuations of the nonzero SNF diagonal entries, skipping the transforms."""
    D = _as_matrix(A, ring)
    rows, cols = D.shape[:2]
    return _reduce(D, _empty_companion(rows, ring, True), _empty_companion(cols, ring, False), ring, generic)


def rank(A, ring) -> int:
    return len(diagonal_valuations(A, ring))


def free_rank(A, ring) -> int:
    return sum(1 for v in diagonal_valuations(A, ring) if v == 0)


def rank_profile(A, ring) -> tuple[int, int]:
    """``(rank, free_rank)`` from a single elimination."""
    vals = diagonal_valuations(A, ring)
    return len(vals), sum(1 for v in vals if v == 0)


def left_kernel(A, ring) -> np.ndarray:
    """Rows generating ``{x : x @ A == 0}``."""
    D = _as_matrix(A, ring)
    rows, cols = D.shape[:2]
    S = ring.eye(rows)
    vals = _reduce(D, S, _empty_companion(cols, ring, False), ring)
    gens = []
    for i in range(rows):
        if i < len(vals):
            if vals[i] == 0:
                continue
            gens.append(S[i] * ring.p ** (ring.r - vals[i]) % ring.q)
        else:
            gens.append(S[i])
    if not gens:
        return ring.zeros((0, rows))
    return np.stack(gens)


def solve_unique(A, y, ring) -> np.ndarray:
    """The unique ``x`` with ``A @ x == y`` for ``A`` of full free column rank.

    Raises :class:`PreconditionViolated` when the free rank of ``A`` is below
    its column count and :class:`Inconsistent` when ``y`` is not in the
    column span.
    """
    D = _as_matrix(A, ring)
    rows, cols = D.shape[:2]
    Y = np.array(y, dtype=ring.dtype) % ring.q
    if Y.shape[0] != rows:
        raise ValueError(f"right-hand side has {Y.shape[0]} entries, expected {rows}")
    Y = Y[:, None]
    T = ring.eye(cols)
    vals = _reduce(D, Y, T, ring)
    if len(vals) < cols or any(vals):
        raise PreconditionViolated(f"matrix has free rank below its {cols} columns")
    if np.any(Y[cols:]):
        raise Inconsistent("right-hand side is outside the column span")
    return ring.matmul(T, Y[:cols])[:, 0]


def howell_form(A, ring, *, generic: bool = False) -> np.ndarray:
    """Canonical row basis of the row span (a Howell form).

    Rows are in echelon order; each pivot is an exact power ``p**j``, entries
    above a pivot are reduced modulo it, and for every pivot row of
    valuation ``j > 0`` the multiple ``p**(r-j)`` of that row lies in the span
    of the rows below. Two matrices span the same module iff their Howell
    forms are identical.
    """
    A = _as_matrix(A, ring)
    if _fast(ring) and not generic:
        return _kernels.howell_reduce(A, ring.q, ring.p, ring.r)
    rows, cols = A.shape[:2]
    W = [row for row in A]
    k = 0
    pivots: list[tuple[int, int]] = []
    for c in range(cols):
        cand = [(int(ring.valuation(W[i][c])), i) for i in range(k, len(W))]
        best, bi = min(cand, default=(ring.r, -1))
        if best >= ring.r:
            continue
        W[k], W[bi] = W[bi], W[k]
        uinv = ring.unit_inverse(ring.divide_p_power(W[k][c], best))
        W[k] = ring.mul(W[k], uinv)
        for i in range(k + 1, len(W)):
            f = ring.divide_p_power(W[i][c], best)
            W[i] = ring.sub(W[i], ring.mul(f, W[k]))
        if best > 0:
            ann = W[k] * ring.p ** (ring.r - best) % ring.q
            if np.any(ann):
                W.append(ann)
        pivots.append((c, best))
        k += 1
    for idx, (c, best) in enumerate(pivots):
        for i in range(idx):
            f = ring.divide_p_power(W[i][c], best)
            W[i] = ring.sub(W[i], ring.mul(f, W[idx]))
    if k == 0:
        return ring.zeros((0, cols))
    return np.stack(W[:k])


def count_full_free_rank(a: int, b: int, p: int, r: int) -> int:
    """Number of ``a x b`` matrices over Z_{p^r} with free rank = rank = a.

    Exact integer form of ``q^(ab) * prod_{i<a} (1 - p^(i-b))``. The square
    case ``a == b`` uses the same product.
    """
    if a < 0 or b < 1 or a > b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    out = p ** ((r - 1) * a * b)
    for i in range(a):
        out *= p**b - p**i
    return out
