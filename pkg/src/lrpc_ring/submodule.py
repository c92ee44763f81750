"""R_q-submodules of R_{q,m}.

A submodule is stored through a generator matrix whose rows are coordinate
vectors in Z_q^m. Rank data, a minimal generating set and the canonical
(Howell) form are computed lazily, since the decoder only needs some of them
for most intermediate modules.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import GenerationTimeout, ImpossibleSupport, NonUnit, PreconditionViolated
from .galois_ring import GaloisRing
from .linalg import _reduce, diagonal_valuations, free_rank, howell_form, left_kernel

MAX_SAMPLING_ATTEMPTS = 256


class Submodule:
    """The R_q-span of a set of elements of R_{q,m}.

    ``dim`` is the minimal number of generators (the rank of any generator
    matrix); on free modules it is the dimension.
    """

    def __init__(self, ring: GaloisRing, gens):
        self.ring = ring
        gens = np.asarray(gens, dtype=ring.dtype) % ring.q
        if gens.ndim == 1:
            gens = gens[None]
        if gens.size == 0:
            gens = np.zeros((0, ring.m), dtype=ring.dtype)
        if gens.shape[1] != ring.m:
            raise ValueError(f"generators must have {ring.m} coordinates")
        self.gens = gens

    @cached_property
    def _reduced(self) -> tuple[tuple[int, ...], np.ndarray]:
        # one elimination gives both the SNF valuations and S @ gens, whose
        # leading rows p^j_i * (T^-1)_i form a minimal generating set
        base = self.ring.base
        D = self.gens.copy()
        SA = self.gens.copy()
        vals = _reduce(D, SA, base.zeros((0, self.ring.m)), base)
        return vals, SA[: len(vals)]

    @property
    def valuations(self) -> tuple[int, ...]:
        return self._reduced[0]

    @property
    def dim(self) -> int:
        return len(self.valuations)

    @property
    def free_rank(self) -> int:
        return sum(1 for v in self.valuations if v == 0)

    @property
    def is_free(self) -> bool:
        return all(v == 0 for v in self.valuations)

    @property
    def log_size(self) -> int:
        """``log_p`` of the number of elements."""
        return sum(self.ring.r - v for v in self.valuations)

    @property
    def generators(self) -> np.ndarray:
        """``dim`` generators; a basis when the module is free."""
        return self._reduced[1]

    @cached_property
    def canon(self) -> np.ndarray:
        return howell_form(self.gens, self.ring.base)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.canon, other.canon)

    def __hash__(self) -> int:
        return hash((self.ring, self.canon.tobytes()))

    def __repr__(self) -> str:
        return f"Submodule(dim={self.dim}, free={self.is_free}, m={self.ring.m})"


def span(ring: GaloisRing, gens) -> Submodule:
    return Submodule(ring, gens)


def zero_module(ring: GaloisRing) -> Submodule:
    return Submodule(ring, np.zeros((0, ring.m), dtype=ring.dtype))


def contains(M: Submodule, v) -> bool:
    """Membership test: appending ``v`` must not enlarge the module."""
    v = np.asarray(v, dtype=M.ring.dtype) % M.ring.q
    if not np.any(v):
        return True
    bigger = Submodule(M.ring, np.vstack([M.generators, v[None]]))
    return bigger.log_size == M.log_size


def intersect(M1: Submodule, M2: Submodule) -> Submodule:
    """``M1 ∩ M2`` via the left kernel of the stacked matrix ``[A; -B]``."""
    ring = M1.ring
    A, B = M1.generators, M2.generators
    if len(A) == 0 or len(B) == 0:
        return zero_module(ring)
    stacked = np.vstack([A, (-B) % ring.q])
    K = left_kernel(stacked, ring.base)
    gens = (K[:, : len(A)] @ A) % ring.q
    return Submodule(ring, gens)


def product_module(A: Submodule, B: Submodule) -> Submodule:
    """Span of all products ``a * b`` of generators."""
    ring = A.ring
    ga, gb = A.generators, B.generators
    if len(ga) == 0 or len(gb) == 0:
        return zero_module(ring)
    prods = ring.mul(ga[:, None, :], gb[None, :, :]).reshape(-1, ring.m)
    return Submodule(ring, prods)


def scale_module(c, M: Submodule) -> Submodule:
    """``c * M`` for a unit ``c``."""
    ring = M.ring
    if not ring.is_unit(c):
        raise NonUnit("scaling element must be a unit")
    return Submodule(ring, (M.generators @ ring.mul_matrix(c)) % ring.q)


def support(ring: GaloisRing, v) -> Submodule:
    """The R_q-span of the entries of a vector over R_{q,m}."""
    return Submodule(ring, np.asarray(v).reshape(-1, ring.m))


def rank_norm(ring: GaloisRing, v) -> tuple[int, int]:
    """``(rank, free rank)`` of a vector, i.e. of its coordinate matrix."""
    vals = diagonal_valuations(np.asarray(v).reshape(-1, ring.m), ring.base)
    return len(vals), sum(1 for x in vals if x == 0)


def random_free_submodule(ring: GaloisRing, t: int, rng: np.random.Generator) -> Submodule:
    """Uniformly random free submodule of dimension ``t``.

    Builds a random basis one element at a time, each drawn uniformly among
    the elements that raise the free rank of the current span.
    """
    if not 0 <= t <= ring.m:
        raise PreconditionViolated(f"dimension {t} outside [0, {ring.m}]")
    basis = np.zeros((t, ring.m), dtype=ring.dtype)
    for i in range(t):
        for _ in range(MAX_SAMPLING_ATTEMPTS):
            basis[i] = ring.random(rng)
            if free_rank(basis[: i + 1], ring.base) == i + 1:
                break
        else:
            raise GenerationTimeout("could not extend the basis of a free submodule")
    return Submodule(ring, basis)


def random_vector_with_support(E: Submodule, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform length-``n`` vector whose support is exactly the free module ``E``.

    Entries are ``e_j = sum_mu B[mu, j] * eps_mu`` for the basis ``eps`` of
    ``E`` and a coefficient matrix ``B`` resampled until it has free rank t.
    """
    ring = E.ring
    if not E.is_free:
        raise PreconditionViolated("support must be a free module")
    t = E.dim
    if t > n:
        raise ImpossibleSupport(f"support dimension {t} exceeds length {n}")
    eps = E.generators
    if t == 0:
        return ring.zeros(n)
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        B = rng.integers(0, ring.q, size=(t, n)).astype(ring.dtype)
        if free_rank(B, ring.base) == t:
            return (B.T @ eps) % ring.q
    raise GenerationTimeout("coefficient matrix never reached full free rank")
