"""Analytic upper bounds on the decoder's failure probability.

All functions take a :class:`BoundInputs` and return a float. By default
results are clamped to ``[0, 1]``; pass ``clamp=False`` for the raw value,
which can exceed 1 for large ``t``.

The product and intersection bounds share the shape

    t * sum_{j<r} [(q/p^j)^lam - (q/p^{j+1})^lam] * (q/p^j)^e

which simplifies termwise to ``(1 - p^-lam) * p^((r-j) * (lam + e))``. Each term
is a ratio of exact integers rounded once to a double, so very negative
exponents underflow to zero instead of raising and the single-term case
``r = 1`` is correctly rounded.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import PreconditionViolated


class IntermediateRingWarning(UserWarning):
    """The intersection bound is used outside its intermediate-ring hypothesis."""


@dataclass(frozen=True)
class BoundInputs:
    p: int
    r: int
    m: int
    lam: int
    n: int
    k: int
    t: int

    def __post_init__(self):
        if self.t < 0 or self.lam < 1 or self.r < 1 or self.m < 1:
            raise PreconditionViolated("need t >= 0 and positive p, r, m, lambda")
        if not 0 < self.k < self.n:
            raise PreconditionViolated("need 0 < k < n")

    @property
    def q(self) -> int:
        return self.p**self.r


def _clamp(x: float, clamp: bool) -> float:
    return min(1.0, max(0.0, x)) if clamp else x


def _layered_sum(inp: BoundInputs, exponent: int) -> float:
    """``t * sum_j (1 - p^-lam) * (q/p^j)^(lam + exponent)``."""
    if inp.t == 0:
        return 0.0
    p, lam = inp.p, inp.lam
    numer = inp.t * (p**lam - 1)
    terms = []
    for j in range(inp.r):
        e = (inp.r - j) * (lam + exponent) - lam
        # int / int is correctly rounded and underflows quietly to 0.0
        terms.append(float(numer * p**e) if e >= 0 else numer / p**-e)
    return math.fsum(terms)


def bound_product_failure(inp: BoundInputs, *, clamp: bool = True) -> float:
    """Bound on ``P[dim(E * F) < lam * t]`` for a random free support ``E``."""
    if inp.lam * inp.t >= inp.m:
        raise PreconditionViolated(f"product bound needs lambda * t < m, got {inp.lam * inp.t} >= {inp.m}")
    return _clamp(_layered_sum(inp, inp.lam * inp.t - inp.m), clamp)


def bound_syndrome_failure(inp: BoundInputs, *, clamp: bool = True) -> float:
    """``1 - prod_{i < lam t} (1 - p^(i - (n-k)))``."""
    nk = inp.n - inp.k
    steps = inp.lam * inp.t
    if steps > nk:
        # the factor with i = n-k vanishes
        return 1.0
    log_prod = math.fsum(math.log1p(-float(inp.p) ** (i - nk)) for i in range(steps))
    return _clamp(-math.expm1(log_prod), clamp)


def smallest_divisor(m: int) -> int:
    """Smallest divisor ``d > 1`` of ``m`` (``m`` itself when prime)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


def intermediate_ring_ok(inp: BoundInputs) -> bool:
    """Whether every ring strictly between R_q and R_{q,m} has more than ``q^lam`` elements.

    Those rings are the Galois subrings of degree ``d`` for divisors ``d > 1`` of ``m``,
    with ``q^d`` elements, so the test is ``smallest_divisor(m) > lam``.
    """
    if inp.m < 2:
        return True
    return smallest_divisor(inp.m) > inp.lam


def bound_intersection_failure(inp: BoundInputs, *, clamp: bool = True, warn: bool = True) -> float:
    """Bound on ``P[dim(cap_i f_i^-1 S) > t]`` given the other two conditions.

    Emits :class:`IntermediateRingWarning` when :func:`intermediate_ring_ok` is
    false; the value is still returned.
    """
    if warn and not intermediate_ring_ok(inp):
        warnings.warn(
            f"m={inp.m} has a subring of degree {smallest_divisor(inp.m)} <= lambda={inp.lam}; "
            "the intersection bound is reported outside its hypothesis",
            IntermediateRingWarning,
            stacklevel=2,
        )
    exponent = inp.t * inp.lam * (inp.lam + 1) // 2 - inp.m
    return _clamp(_layered_sum(inp, exponent), clamp)


def bound_components(inp: BoundInputs, *, clamp: bool = True, warn: bool = True) -> tuple[float, float, float]:
    """``(product, syndrome, intersection)`` bounds."""
    return (
        bound_product_failure(inp, clamp=clamp),
        bound_syndrome_failure(inp, clamp=clamp),
        bound_intersection_failure(inp, clamp=clamp, warn=warn),
    )


def bound_overall_failure(inp: BoundInputs, *, clamp: bool = True, warn: bool = True) -> float:
    """Union bound: the sum of the three raw component bounds."""
    total = math.fsum(bound_components(inp, clamp=False, warn=warn))
    return _clamp(total, clamp)


def bound_overall_success(inp: BoundInputs, *, warn: bool = True) -> float:
    return 1.0 - bound_overall_failure(inp, warn=warn)
