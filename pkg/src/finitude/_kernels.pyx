# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def encode_maps(maps):
    cdef const i64[:, :] m = np.ascontiguousarray(maps, dtype=np.int64)
    cdef Py_ssize_t n = m.shape[0], d = m.shape[1], i, x
    cdef i64 base = d + 1, code
    out = np.zeros(n, dtype=np.int64)
    cdef i64[:] o = out
    for i in range(n):
        code = 0
        for x in range(d - 1, -1, -1):
            code = code * base + m[i, x] + 1
        o[i] = code
    return out


def product_codes(maps):
    cdef const i64[:, :] m = np.ascontiguousarray(maps, dtype=np.int64)
    cdef Py_ssize_t n = m.shape[0], d = m.shape[1], i, j, x
    cdef i64 base = d + 1, code, y
    out = np.zeros((n, n), dtype=np.int64)
    cdef i64[:, :] o = out
    for i in range(n):
        for j in range(n):
            code = 0
            for x in range(d - 1, -1, -1):
                y = m[j, x]
                if y >= 0:
                    code = code * base + m[i, y] + 1
                else:
                    code = code * base
            o[i, j] = code
    return out


def find_nonassociative(table):
    cdef const i64[:, :] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0], i, j, k
    cdef i64 ij, jk, left, right
    for i in range(n):
        for j in range(n):
            ij = t[i, j]
            for k in range(n):
                jk = t[j, k]
                left = t[ij, k] if ij >= 0 else -1
                right = t[i, jk] if jk >= 0 else -1
                if left != right:
                    return (i, j, k)
    return None


def ideal_matrices(table):
    cdef const i64[:, :] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0], a, x, y
    cdef i64 ax, xa
    right_a = np.zeros((n, n), dtype=np.uint8)
    left_a = np.zeros((n, n), dtype=np.uint8)
    two_a = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] right = right_a
    cdef cnp.uint8_t[:, :] left = left_a
    cdef cnp.uint8_t[:, :] two = two_a
    for a in range(n):
        right[a, a] = 1
        left[a, a] = 1
        two[a, a] = 1
        for x in range(n):
            ax = t[a, x]
            xa = t[x, a]
            right[a, ax] = 1
            left[a, xa] = 1
            two[a, ax] = 1
            two[a, xa] = 1
            for y in range(n):
                two[a, t[xa, y]] = 1
    return right_a, left_a, two_a


def weak_inverses(table):
    cdef const i64[:, :] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0], s, x
    cdef i64 c, f
    counts_a = np.zeros(n, dtype=np.int64)
    first_a = np.full(n, -1, dtype=np.int64)
    cdef i64[:] counts = counts_a
    cdef i64[:] first = first_a
    for s in range(n):
        c = 0
        f = -1
        for x in range(n):
            if t[t[s, x], s] == s and t[t[x, s], x] == x:
                if f < 0:
                    f = x
                c += 1
        counts[s] = c
        first[s] = f
    return counts_a, first_a
