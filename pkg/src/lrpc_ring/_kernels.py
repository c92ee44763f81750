"""Compiled elimination kernels for int64 matrices over Z_{p^r}.

These mirror the ring-generic routines in ``linalg`` operation for operation
(same pivot order, same row/column updates), so both paths return identical
results; the generic path is the reference and the test oracle.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def _val(x, p, r):
    if x == 0:
        return r
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@numba.njit(cache=True)
def _inv(a, q):
    # extended Euclid; caller guarantees gcd(a, q) == 1
    t0, t1 = 0, 1
    r0, r1 = q, a % q
    while r1 != 0:
        quo = r0 // r1
        r0, r1 = r1, r0 - quo * r1
        t0, t1 = t1, t0 - quo * t1
    return t0 % q


@numba.njit(cache=True, inline="always")
def _md(x, q, mask):
    # reduction mod q; a bit mask when q is a power of two
    if mask:
        return x & mask
    return x % q


@numba.njit(cache=True)
def snf_reduce(D, R, C, q, p, r):
    """Diagonalise ``D`` in place; returns the pivot valuations.

    Row operations are mirrored on ``R`` (rows x s) and column operations on
    ``C`` (t x cols), so starting from identities yields S and T with
    ``D_final = S @ D_initial @ T``.
    """
    rows, cols = D.shape
    mask = q - 1 if q & (q - 1) == 0 else 0
    ns = R.shape[1]
    nt = C.shape[0]
    vals = np.empty(min(rows, cols), dtype=np.int64)
    nv = 0
    for k in range(min(rows, cols)):
        best = r
        bi = -1
        bj = -1
        for i in range(k, rows):
            for j in range(k, cols):
                v = _val(D[i, j], p, r)
                if v < best:
                    best = v
                    bi = i
                    bj = j
                    if v == 0:
                        break
            if best == 0:
                break
        if bi < 0:
            break
        if bi != k:
            for c in range(cols):
                tmp = D[k, c]
                D[k, c] = D[bi, c]
                D[bi, c] = tmp
            for c in range(ns):
                tmp = R[k, c]
                R[k, c] = R[bi, c]
                R[bi, c] = tmp
        if bj != k:
            for i in range(rows):
                tmp = D[i, k]
                D[i, k] = D[i, bj]
                D[i, bj] = tmp
            for i in range(nt):
                tmp = C[i, k]
                C[i, k] = C[i, bj]
                C[i, bj] = tmp
        pj = p**best
        uinv = _inv(D[k, k] // pj, q)
        # columns left of k are already zero in rows k and below
        for c in range(k, cols):
            D[k, c] = _md(D[k, c] * uinv, q, mask)
        for c in range(ns):
            R[k, c] = _md(R[k, c] * uinv, q, mask)
        for i in range(k + 1, rows):
            f = D[i, k] // pj
            if f != 0:
                D[i, k] = 0
                for c in range(k + 1, cols):
                    D[i, c] = _md(D[i, c] - f * D[k, c], q, mask)
                for c in range(ns):
                    R[i, c] = _md(R[i, c] - f * R[k, c], q, mask)
        # column k is now zero outside row k, so the column operations only
        # change row k of D
        for j in range(k + 1, cols):
            f = D[k, j] // pj
            if f != 0:
                D[k, j] = 0
                for i in range(nt):
                    C[i, j] = _md(C[i, j] - C[i, k] * f, q, mask)
        vals[nv] = best
        nv += 1
    return vals[:nv]


@numba.njit(cache=True)
def howell_reduce(A, q, p, r):
    """Howell form of the row span of ``A`` (zero rows dropped)."""
    rows, cols = A.shape
    W = np.zeros((rows + cols, cols), dtype=np.int64)
    W[:rows] = A
    n = rows
    k = 0
    pivcols = np.empty(cols, dtype=np.int64)
    for c in range(cols):
        best = r
        bi = -1
        for i in range(k, n):
            v = _val(W[i, c], p, r)
            if v < best:
                best = v
                bi = i
                if v == 0:
                    break
        if bi < 0:
            continue
        if bi != k:
            for cc in range(cols):
                tmp = W[k, cc]
                W[k, cc] = W[bi, cc]
                W[bi, cc] = tmp
        pj = p**best
        uinv = _inv(W[k, c] // pj, q)
        for cc in range(cols):
            W[k, cc] = (W[k, cc] * uinv) % q
        for i in range(k + 1, n):
            f = W[i, c] // pj
            if f != 0:
                for cc in range(cols):
                    W[i, cc] = (W[i, cc] - f * W[k, cc]) % q
        if best > 0:
            ann = p ** (r - best)
            nz = False
            for cc in range(cols):
                W[n, cc] = (W[k, cc] * ann) % q
                if W[n, cc] != 0:
                    nz = True
            if nz:
                n += 1
        pivcols[k] = c
        k += 1
    for idx in range(k):
        c = pivcols[idx]
        pj = W[idx, c]
        for i in range(idx):
            f = W[i, c] // pj
            if f != 0:
                for cc in range(cols):
                    W[i, cc] = (W[i, cc] - f * W[idx, cc]) % q
    return W[:k].copy()
