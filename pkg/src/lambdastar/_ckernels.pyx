# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline bint _occurs(const unsigned char* pat, Py_ssize_t m,
                         const unsigned char* left, Py_ssize_t nl,
                         const unsigned char* right, Py_ssize_t nr) noexcept nogil:
    # is pat a factor of left+right, without building the concatenation
    cdef Py_ssize_t n = nl + nr
    cdef Py_ssize_t start, j, pos
    cdef unsigned char c
    if m == 0:
        return True
    if m > n:
        return False
    for start in range(n - m + 1):
        for j in range(m):
            pos = start + j
            if pos < nl:
                c = left[pos]
            else:
                c = right[pos - nl]
            if c != pat[j]:
                break
        else:
            return True
    return False


cdef bint _free(tuple coords, tuple forbidden):
    cdef tuple f
    cdef bytes a, b
    cdef Py_ssize_t i, n = len(coords)
    for f in forbidden:
        for i in range(n):
            a = <bytes>f[i]
            b = <bytes>coords[i]
            if not _occurs(a, len(a), b, len(b), b"", 0):
                break
        else:
            return False
    return True


def forbidden_free(coords, forbidden):
    return bool(_free(tuple(coords), tuple(tuple(f) for f in forbidden)))


def member_mask(words, forbidden):
    cdef tuple fb = tuple(tuple(f) for f in forbidden)
    cdef Py_ssize_t i, n = len(words)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        out[i] = _free(tuple(words[i]), fb)
    return out


def factor_matrix(lefts, rights, bytes pattern):
    cdef Py_ssize_t a, b
    cdef Py_ssize_t na = len(lefts), nb = len(rights)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((na, nb), dtype=np.uint8)
    cdef bytes left, right
    cdef const unsigned char* pp = pattern
    cdef Py_ssize_t m = len(pattern)
    for a in range(na):
        left = <bytes>lefts[a]
        for b in range(nb):
            right = <bytes>rights[b]
            out[a, b] = _occurs(pp, m, left, len(left), right, len(right))
    return out
