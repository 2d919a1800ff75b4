"""Pure-Python implementations of the table kernels.

Same signatures and results as the compiled ``_kernels`` extension.  Tables
are 2-D integer arrays in which ``-1`` denotes an absorbing external zero
(used by contracted and groupoid algebras); ordinary semigroup tables never
contain ``-1``.
"""

import numpy as np


def encode_maps(maps):
    """Encode rows of partial maps (``-1`` = undefined) as integers in base degree+1."""
    maps = np.asarray(maps, dtype=np.int64)
    n, d = maps.shape
    base = d + 1
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        code = 0
        row = maps[i]
        for x in range(d - 1, -1, -1):
            code = code * base + int(row[x]) + 1
        out[i] = code
    return out


def product_codes(maps):
    """``codes[i, j]`` is the code of the composite ``maps[i] o maps[j]`` (apply j first)."""
    m = [list(map(int, row)) for row in np.asarray(maps, dtype=np.int64)]
    n = len(m)
    d = len(m[0]) if n else 0
    base = d + 1
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        s = m[i]
        for j in range(n):
            t = m[j]
            code = 0
            for x in range(d - 1, -1, -1):
                y = t[x]
                code = code * base + (s[y] + 1 if y >= 0 else 0)
            out[i, j] = code
    return out


def find_nonassociative(table):
    """Return the first triple (i, j, k) with (ij)k != i(jk), or None."""
    t = [list(map(int, row)) for row in np.asarray(table, dtype=np.int64)]
    n = len(t)
    for i in range(n):
        ti = t[i]
        for j in range(n):
            ij = ti[j]
            tj = t[j]
            for k in range(n):
                jk = tj[k]
                left = t[ij][k] if ij >= 0 else -1
                right = ti[jk] if jk >= 0 else -1
                if left != right:
                    return (i, j, k)
    return None


def ideal_matrices(table):
    """Membership matrices of principal ideals.

    Returns ``(right, left, two)`` with ``right[t, s] == 1`` iff s lies in tS^1,
    ``left[t, s]`` iff s in S^1 t, and ``two[t, s]`` iff s in S^1 t S^1.
    """
    t = [list(map(int, row)) for row in np.asarray(table, dtype=np.int64)]
    n = len(t)
    right = np.zeros((n, n), dtype=np.uint8)
    left = np.zeros((n, n), dtype=np.uint8)
    two = np.zeros((n, n), dtype=np.uint8)
    for a in range(n):
        right[a, a] = 1
        left[a, a] = 1
        two[a, a] = 1
        for x in range(n):
            ax = t[a][x]
            xa = t[x][a]
            right[a, ax] = 1
            left[a, xa] = 1
            two[a, ax] = 1
            two[a, xa] = 1
            tx = t[xa]
            for y in range(n):
                two[a, tx[y]] = 1
    return right, left, two


def weak_inverses(table):
    """For each s: the number of t with sts = s and tst = t, and the least such t (or -1)."""
    t = [list(map(int, row)) for row in np.asarray(table, dtype=np.int64)]
    n = len(t)
    counts = np.zeros(n, dtype=np.int64)
    first = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        ts = t[s]
        c = 0
        f = -1
        for x in range(n):
            sx = ts[x]
            if t[sx][s] == s and t[t[x][s]][x] == x:
                if f < 0:
                    f = x
                c += 1
        counts[s] = c
        first[s] = f
    return counts, first
