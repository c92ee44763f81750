"""Reference implementations used as test oracles; none of them touch the Smith-form code."""

import itertools

import numpy as np


def rank_mod_p(A, p: int) -> int:
    """Rank over F_p by plain Gaussian elimination."""
    M = [[int(x) % p for x in row] for row in np.asarray(A).reshape(len(A), -1)]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    rk = 0
    for c in range(cols):
        piv = next((i for i in range(rk, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = pow(M[rk][c], -1, p)
        M[rk] = [x * inv % p for x in M[rk]]
        for i in range(rows):
            if i != rk and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rk])]
        rk += 1
    return rk


def det_int(M) -> int:
    """Integer determinant by cofactor expansion (small matrices only)."""
    M = [list(map(int, row)) for row in M]
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det_int([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def has_unit_minor(A, p: int) -> bool:
    """Full free row rank iff some maximal minor is a unit."""
    A = np.asarray(A)
    a, b = A.shape
    return any(det_int(A[:, list(cols)]) % p for cols in itertools.combinations(range(b), a))


def span_size(A, q: int) -> int:
    """Number of elements in the Z_q row span, by enumeration."""
    A = np.asarray(A, dtype=np.int64)
    seen = set()
    for coeffs in itertools.product(range(q), repeat=len(A)):
        v = (np.array(coeffs, dtype=np.int64) @ A) % q if len(A) else np.zeros(A.shape[1], dtype=np.int64)
        seen.add(v.tobytes())
    return len(seen)


def span_set(A, q: int) -> set:
    A = np.asarray(A, dtype=np.int64)
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(A)):
        out.add(tuple(((np.array(coeffs, dtype=np.int64) @ A) % q).tolist()))
    return out


# ---- exact bound arithmetic -------------------------------------------------

from fractions import Fraction  # noqa: E402


def exact_layered(p, r, lam, t, exponent):
    """t * sum_j [(q/p^j)^lam - (q/p^(j+1))^lam] * (q/p^j)^exponent, as a Fraction."""
    q = Fraction(p**r)
    total = Fraction(0)
    for j in range(r):
        a = q / p**j
        b = q / p ** (j + 1)
        total += (a**lam - b**lam) * a**exponent
    return t * total


def exact_product(p, r, m, lam, t):
    return exact_layered(p, r, lam, t, lam * t - m)


def exact_intersection(p, r, m, lam, t):
    return exact_layered(p, r, lam, t, t * lam * (lam + 1) // 2 - m)


def exact_syndrome(p, lam, t, nk):
    prod = Fraction(1)
    for i in range(lam * t):
        prod *= 1 - Fraction(p) ** (i - nk)
    return 1 - prod
