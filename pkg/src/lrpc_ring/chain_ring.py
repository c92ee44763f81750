"""Arithmetic in the chain ring Z_{p^r}.

Elements are plain Python ints (or numpy integer arrays for the vectorised
routines) holding the least nonnegative residue modulo ``q = p**r``.
"""

from __future__ import annotations

import numpy as np

from .errors import NonUnit, ZeroInput

_MAX_MODULUS = 2**63


def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class _ChainRingBase:
    """Shared residue bookkeeping for Z_{p^r} and its Galois extensions.

    Subclasses set ``elem_ndim`` (0 for scalars, 1 for coefficient vectors)
    and implement ``mul``, ``valuation`` and ``unit_inverse``; the generic
    linear algebra in :mod:`lrpc_ring.linalg` only talks to this interface.
    """

    elem_ndim: int = 0

    def __init__(self, p: int, r: int):
        p, r = int(p), int(r)
        if r < 1:
            raise ValueError(f"exponent r must be positive, got {r}")
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        q = p**r
        if q >= _MAX_MODULUS:
            raise ValueError(f"q = {p}^{r} does not fit a 64-bit word")
        self.p = p
        self.r = r
        self.q = q

    # ---- array-level operations (shared) -------------------------------

    @property
    def dtype(self):
        return np.int64

    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=self.dtype) % self.q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def scalar_valuation(self, x: int) -> int:
        """p-adic valuation of a residue, with ``r`` standing in for zero."""
        x = int(x) % self.q
        if x == 0:
            return self.r
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def coeff_valuation(self, a) -> np.ndarray:
        """Entrywise valuation of an integer array (``r`` for zero entries)."""
        a = np.asarray(a)
        out = np.zeros(a.shape, dtype=np.int64)
        pj = 1
        for _ in range(self.r):
            pj *= self.p
            out += np.asarray(a % pj == 0, dtype=np.int64)
        return out

    def divide_p_power(self, a, j: int):
        """Exact quotient ``a / p**j`` for entries divisible by ``p**j``."""
        return a // (self.p**j)

    def mod_p_power(self, a, j: int):
        return a % (self.p**j)


class ChainRing(_ChainRingBase):
    """The ring R_q = Z_{p^r}.

    >>> R = ChainRing(2, 2)
    >>> R.add(3, 3), R.mul(2, 2), R.inverse(3)
    (2, 0, 3)
    """

    elem_ndim = 0

    def __init__(self, p: int, r: int):
        super().__init__(p, r)
        # matmul accumulates up to ~2**14 products below 2**48 without overflow
        self._dtype = np.int64 if self.q < 2**24 else object

    def __repr__(self) -> str:
        return f"ChainRing(p={self.p}, r={self.r})"

    def __eq__(self, other) -> bool:
        return type(other) is ChainRing and (self.p, self.r) == (other.p, other.r)

    def __hash__(self) -> int:
        return hash(("Z", self.p, self.r))

    @property
    def dtype(self):
        return self._dtype

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def one(self):
        return 1

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64).astype(self.dtype)

    def p_power(self, j: int):
        return self.p**j % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def matmul(self, A, B) -> np.ndarray:
        return (np.asarray(A, dtype=self.dtype) @ np.asarray(B, dtype=self.dtype)) % self.q

    def valuation(self, a) -> np.ndarray:
        return self.coeff_valuation(a)

    def is_unit(self, a) -> bool:
        return int(a) % self.p != 0

    def inverse(self, a: int) -> int:
        a = int(a) % self.q
        if a % self.p == 0:
            raise NonUnit(f"{a} is not a unit modulo {self.q}")
        return pow(a, -1, self.q)

    unit_inverse = inverse

    def valuation_decompose(self, a: int) -> tuple[int, int]:
        """Write nonzero ``a`` as ``p**j * u`` with ``u`` a unit."""
        a = int(a) % self.q
        if a == 0:
            raise ZeroInput("zero has no valuation decomposition")
        j = self.scalar_valuation(a)
        return j, a // self.p**j

    def units(self) -> list[int]:
        return [a for a in range(self.q) if a % self.p]

    def unit_count(self) -> int:
        """Closed form q(1 - 1/p)."""
        return self.q - self.q // self.p
