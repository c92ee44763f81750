"""Syndrome-space decoding of LRPC codes over R_{q,m}.

The decoder recovers the error support as an intersection of the scaled
syndrome spaces ``f_i^-1 * S`` and then solves for the error coordinates
inside that support (erasure decoding). Every decoding failure is returned
as a value carrying the stage that rejected the word.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .code import LrpcCode, syndrome
from .errors import ErasureInconsistent, Inconsistent, PreconditionViolated
from .linalg import matmul_mod, solve_unique
from .submodule import Submodule, intersect, zero_module


class FailureReason(str, enum.Enum):
    SYNDROME_DIM = "SyndromeDim"
    SUPPORT_DIM = "SupportDim"
    PRODUCT_DIM = "ProductDim"
    ERASURE_INCONSISTENT = "ErasureInconsistent"


@dataclass(frozen=True)
class DecodeOutcome:
    success: bool
    codeword: np.ndarray | None = None
    error: np.ndarray | None = None
    reason: FailureReason | None = None
    diagnostics: dict = field(default_factory=dict)
    # intermediate modules, kept so that callers can evaluate the success
    # conditions without redoing the linear algebra
    syndrome_space: Submodule | None = field(default=None, repr=False, compare=False)
    support: Submodule | None = field(default=None, repr=False, compare=False)

    @property
    def status(self) -> str:
        return "Success" if self.success else "Failure"


class Conditions(NamedTuple):
    product: bool
    syndrome: bool
    intersection: bool

    @property
    def all(self) -> bool:
        return self.product and self.syndrome and self.intersection


def product_with_f(code: LrpcCode, E: Submodule) -> Submodule:
    """``E * span(f)``, generated by the products of E's generators with each f_l."""
    g = E.generators
    if len(g) == 0:
        return zero_module(code.ring)
    prods = np.tensordot(g, code.f_mul, axes=([1], [1])) % code.ring.q
    return Submodule(code.ring, prods.reshape(-1, code.ring.m))


def recover_support(code: LrpcCode, S: Submodule) -> Submodule:
    """``∩_i f_i^-1 * S``."""
    g = S.generators
    if len(g) == 0:
        return zero_module(code.ring)
    q = code.ring.q
    out = Submodule(code.ring, (g @ code.f_inv_mul[0]) % q)
    for Mi in code.f_inv_mul[1:]:
        out = intersect(out, Submodule(code.ring, (g @ Mi) % q))
    return out


def erasure_system(code: LrpcCode, eps) -> np.ndarray:
    """Z_q matrix mapping the coefficients ``B[mu, j]`` to the syndrome coordinates.

    Row ``(i, c)`` is coordinate ``c`` of syndrome ``i``; column ``(mu, j)``
    multiplies ``B[mu, j]`` in ``e_j = sum_mu B[mu, j] * eps_mu``.
    """
    nk, n, m = code.n - code.k, code.n, code.ring.m
    t = len(eps)
    # P[mu, (i, c, j)] = coordinate c of H[i, j] * eps_mu
    P = matmul_mod(np.asarray(eps, dtype=code.ring.dtype), code.erasure_matrix, code.ring.q)
    return np.ascontiguousarray(P.reshape(t, nk * m, n).transpose(1, 0, 2).reshape(nk * m, t * n))


def erasure_decode(code: LrpcCode, E: Submodule, s) -> np.ndarray:
    """The unique error with support in the free module ``E`` and syndrome ``s``.

    Raises :class:`ErasureInconsistent` if no such error exists and
    :class:`PreconditionViolated` if the linear system is not uniquely
    solvable (``E`` not free, or ``E * span(f)`` too small).
    """
    ring = code.ring
    s = np.asarray(s, dtype=ring.dtype) % ring.q
    if not E.is_free:
        raise PreconditionViolated("support must be free")
    eps = E.generators
    t = len(eps)
    if code.lam * t > ring.m:
        raise PreconditionViolated(f"lambda * t = {code.lam * t} exceeds m = {ring.m}")
    if t == 0:
        if np.any(s):
            raise ErasureInconsistent("nonzero syndrome with empty support")
        return ring.zeros(code.n)
    A = erasure_system(code, eps)
    try:
        x = solve_unique(A, s.reshape(-1), ring.base)
    except Inconsistent:
        raise ErasureInconsistent("no error vector with this support matches the syndrome") from None
    e = (x.reshape(t, code.n).T @ eps) % ring.q
    if not np.array_equal(syndrome(code, e), s):
        raise ErasureInconsistent("recovered error fails the syndrome check")
    return e


def decode(code: LrpcCode, r, t: int) -> DecodeOutcome:
    """Decode ``r = c + e`` where the support of ``e`` is free of dimension ``t``."""
    ring = code.ring
    r = np.asarray(r, dtype=ring.dtype) % ring.q
    if r.shape != (code.n, ring.m):
        raise PreconditionViolated(f"received word must have shape ({code.n}, {ring.m})")
    if t < 0 or code.lam * t > ring.m:
        raise PreconditionViolated(f"t={t} outside 0 <= lambda*t <= m")
    target = code.lam * t
    s = syndrome(code, r)
    S = Submodule(ring, s)
    diag = {"dim_S": S.dim, "free_rank_S": S.free_rank}

    def fail(reason, support=None):
        return DecodeOutcome(False, reason=reason, diagnostics=diag, syndrome_space=S, support=support)

    # the syndrome space must be free of dimension at least lambda * t
    if S.free_rank < target or S.dim != S.free_rank:
        return fail(FailureReason.SYNDROME_DIM)
    Ep = recover_support(code, S)
    diag["dim_E"] = Ep.dim
    if Ep.dim > t:
        return fail(FailureReason.SUPPORT_DIM, Ep)
    EF = product_with_f(code, Ep)
    diag["dim_EF"] = EF.dim
    diag["free_rank_EF"] = EF.free_rank
    if EF.free_rank < target:
        return fail(FailureReason.PRODUCT_DIM, Ep)
    try:
        e = erasure_decode(code, Ep, s)
    except (ErasureInconsistent, PreconditionViolated):
        return fail(FailureReason.ERASURE_INCONSISTENT, Ep)
    return DecodeOutcome(
        True, codeword=(r - e) % ring.q, error=e, diagnostics=diag, syndrome_space=S, support=Ep
    )


def check_conditions(
    code: LrpcCode,
    E: Submodule,
    s,
    *,
    syndrome_space: Submodule | None = None,
    support: Submodule | None = None,
) -> Conditions:
    """Evaluate the product, syndrome and intersection conditions for a
    planted free support ``E`` and syndrome ``s``.

    ``syndrome_space`` and ``support`` may pass in already computed
    ``span(s)`` and ``∩ f_i^-1 span(s)``.
    """
    target = code.lam * E.dim
    EF = product_with_f(code, E)
    product = EF.dim == EF.free_rank == target
    S = syndrome_space if syndrome_space is not None else Submodule(code.ring, s)
    synd = S.dim == S.free_rank == target
    Ep = support if support is not None else recover_support(code, S)
    return Conditions(product, synd, Ep.dim == E.dim)
