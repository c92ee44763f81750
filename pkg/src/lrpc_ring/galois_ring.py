"""The Galois ring R_{q,m} = Z_{p^r}[x]/(h).

An element is a length-``m`` integer vector of coordinates over the power
basis ``[1, x, ..., x^(m-1)]``; arrays of elements carry that axis last, so a
length-``n`` vector over R_{q,m} is an ``(n, m)`` array and an ``a x b``
matrix is ``(a, b, m)``.
"""

from __future__ import annotations

import math

import numpy as np

from .chain_ring import ChainRing, _ChainRingBase
from .errors import GenerationTimeout, NonUnit, ReducibleModulus, ZeroInput

# ---------------------------------------------------------------------------
# dense polynomials over F_p, little-endian coefficient lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return _trim(quot), a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                out[i + j] = (out[i + j] + ac * bc) % p
    return _trim(out)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, p), mod, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


def _poly_inverse_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Inverse of ``a`` in F_p[x]/(mod) by the extended Euclidean algorithm."""
    r0, r1 = _trim([c % p for c in mod]), _poly_divmod(a, mod, p)[1]
    s0, s1 = [], [1]
    while r1:
        quot, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
    if len(r0) != 1:
        raise NonUnit("element is not invertible modulo p")
    c = pow(r0[0], -1, p)
    return [x * c % p for x in s0]


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(h, p: int) -> bool:
    """Rabin's irreducibility test for ``h mod p`` over F_p.

    ``h`` must be monic modulo ``p``; its degree is taken as ``len(h) - 1``.
    """
    hbar = _trim([int(c) % p for c in h])
    m = len(hbar) - 1
    if m < 1 or len(h) - 1 != m:
        return False
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^k) mod h by repeated p-th powers
    frob = [x]
    cur = x
    for _ in range(m):
        cur = _poly_powmod(cur, p, hbar, p)
        frob.append(cur)
    if _poly_sub(frob[m], x, p):
        return False
    for d in _prime_factors(m):
        g = _poly_gcd(_poly_sub(frob[m // d], x, p), hbar, p)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------


class GaloisRing(_ChainRingBase):
    """Arithmetic in R_{q,m} for a monic modulus ``h`` that is irreducible mod p.

    Parameters
    ----------
    p, r:
        The base ring is Z_{p^r}.
    h:
        Length ``m + 1`` little-endian coefficient list (constant term first).
    """

    elem_ndim = 1

    def __init__(self, p: int, r: int, h):
        super().__init__(p, r)
        h = [int(c) % self.q for c in h]
        m = len(h) - 1
        if m < 1 or h[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if not is_irreducible_mod_p(h, self.p):
            raise ReducibleModulus(f"{h} is reducible modulo {self.p}")
        self.m = m
        self.h = tuple(h)
        self.base = ChainRing(p, r)
        self._dtype = np.int64 if self.q < 2**24 and (m * self.q) ** 2 < 2**60 else object

        # x^k mod h for k < 2m - 1
        xpow = np.zeros((2 * m - 1, m), dtype=object)
        cur = [0] * m
        cur[0] = 1
        for k in range(2 * m - 1):
            xpow[k] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            for i in range(m):
                cur[i] = (cur[i] - top * h[i]) % self.q
        self._xpow = xpow.astype(self._dtype)
        idx = np.add.outer(np.arange(m), np.arange(m))
        self._mul_tensor = self._xpow[idx]  # (m, m, m)
        self._mul_flat = self._mul_tensor.reshape(m * m, m)

    def __repr__(self) -> str:
        return f"GaloisRing(p={self.p}, r={self.r}, m={self.m}, h={list(self.h)})"

    def __eq__(self, other) -> bool:
        return type(other) is GaloisRing and (self.p, self.r, self.h) == (other.p, other.r, other.h)

    def __hash__(self) -> int:
        return hash(("GR", self.p, self.r, self.h))

    @property
    def dtype(self):
        return self._dtype

    # ---- constructors ---------------------------------------------------

    def zeros(self, shape=()) -> np.ndarray:
        if isinstance(shape, int):
            shape = (shape,)
        return np.zeros(tuple(shape) + (self.m,), dtype=self.dtype)

    def one(self) -> np.ndarray:
        e = self.zeros()
        e[0] = 1
        return e

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        out[np.arange(n), np.arange(n), 0] = 1
        return out

    def p_power(self, j: int) -> np.ndarray:
        e = self.zeros()
        e[0] = self.p**j % self.q
        return e

    def element(self, coeffs) -> np.ndarray:
        a = self.asarray(coeffs)
        if a.shape[-1:] != (self.m,):
            raise ValueError(f"expected trailing axis of length {self.m}")
        return a

    def gen(self) -> np.ndarray:
        """The residue class of x (equal to 1 when m = 1)."""
        e = self.zeros()
        if self.m == 1:
            e[0] = (-self.h[0]) % self.q
        else:
            e[1] = 1
        return e

    # ---- arithmetic -----------------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=self.dtype)
        b = np.asarray(b, dtype=self.dtype)
        outer = (a[..., :, None] * b[..., None, :]) % self.q
        flat = outer.reshape(outer.shape[:-2] + (self.m * self.m,))
        return (flat @ self._mul_flat) % self.q

    def mul_matrix(self, a) -> np.ndarray:
        """Matrix ``M`` with ``b @ M == mul(a, b)`` for coordinate rows ``b``.

        Works batched: an ``(..., m)`` input gives ``(..., m, m)``.
        """
        a = np.asarray(a, dtype=self.dtype)
        return np.tensordot(a, self._mul_tensor, axes=([-1], [0])) % self.q

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over R_{q,m}: ``(a, b, m) x (b, c, m) -> (a, c, m)``."""
        A = np.asarray(A, dtype=self.dtype)
        B = np.asarray(B, dtype=self.dtype)
        prod = self.mul(A[:, :, None, :], B[None, :, :, :])
        return prod.sum(axis=1) % self.q

    def valuation(self, a) -> np.ndarray:
        """Minimum coefficient valuation; ``r`` marks the zero element."""
        return self.coeff_valuation(a).min(axis=-1)

    def is_unit(self, a) -> bool:
        return bool(np.any(np.asarray(a) % self.p != 0))

    def inverse(self, a) -> np.ndarray:
        """Invert a unit: Euclid modulo p, then Newton lifting to Z_{p^r}."""
        a = self.asarray(a)
        if not self.is_unit(a):
            raise NonUnit("element has no unit coefficient")
        y = _poly_inverse_mod([int(c) for c in a], list(self.h), self.p)
        y = self.element(y + [0] * (self.m - len(y)))
        two = 2 * self.one()
        for _ in range(math.ceil(math.log2(self.r)) if self.r > 1 else 0):
            y = self.mul(y, self.sub(two, self.mul(a, y)))
        return y

    unit_inverse = inverse

    def valuation_decompose(self, a) -> tuple[int, np.ndarray]:
        a = self.asarray(a)
        if not np.any(a):
            raise ZeroInput("zero has no valuation decomposition")
        j = int(self.valuation(a))
        return j, a // self.p**j

    # ---- sampling -------------------------------------------------------

    def random(self, rng: np.random.Generator, size=()) -> np.ndarray:
        if isinstance(size, int):
            size = (size,)
        return rng.integers(0, self.q, size=tuple(size) + (self.m,)).astype(self.dtype)

    def random_unit(self, rng: np.random.Generator) -> np.ndarray:
        while True:
            a = self.random(rng)
            if self.is_unit(a):
                return a

    def unit_count(self) -> int:
        """Closed form q^m (1 - p^-m)."""
        return self.q**self.m - (self.q // self.p) ** self.m


def ext_gamma(v) -> np.ndarray:
    """Coordinates of a length-``n`` vector as an ``m x n`` matrix over Z_q."""
    v = np.asarray(v)
    return np.ascontiguousarray(v.T)


def ext_gamma_inverse(A) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(A).T)


def make_galois_ring(
    p: int,
    r: int,
    m: int,
    h=None,
    rng: np.random.Generator | None = None,
    max_attempts: int | None = None,
) -> GaloisRing:
    """Build R_{q,m}, sampling a random admissible modulus when ``h`` is None.

    Random moduli are monic with uniform lower coefficients over Z_q; sampling
    stops after ``64 * m`` rejected candidates unless ``max_attempts`` says
    otherwise.
    """
    if h is not None:
        if len(h) != m + 1:
            raise ValueError(f"modulus must have {m + 1} coefficients, got {len(h)}")
        return GaloisRing(p, r, h)
    if rng is None:
        rng = np.random.default_rng()
    q = p**r
    attempts = 64 * m if max_attempts is None else max_attempts
    for _ in range(attempts):
        cand = [int(c) for c in rng.integers(0, q, size=m)] + [1]
        if is_irreducible_mod_p(cand, p):
            return GaloisRing(p, r, cand)
    raise GenerationTimeout(f"no irreducible modulus found in {attempts} attempts")
