# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting and bit-mixing kernels.

Must stay numerically interchangeable with _pykernels: same float
expressions (no FMA contraction, see setup.py) and same integer mixing
constants, so that either backend yields identical samples.
"""

from libc.stdint cimport int64_t, uint64_t

import numpy as np

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15UL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9UL
cdef uint64_t MIX2 = 0x94D049BB133111EBUL


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


def bits_block(key, start, n):
    """Outputs number start+1 .. start+n of the splitmix64 stream `key`."""
    cdef uint64_t k = key
    cdef uint64_t c = start
    cdef Py_ssize_t m = n
    out = np.empty(m, dtype=np.uint64)
    cdef uint64_t[::1] v = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            v[i] = mix64(k + (c + 1 + <uint64_t> i) * GAMMA)
    return out


def close_pair_count(const double[::1] xs, const double[::1] ys, double r):
    """Number of unordered index pairs i<j with Euclidean distance <= r."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef double rr = r * r
    cdef double dx, dy
    cdef int64_t total = 0
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                dx = xs[i] - xs[j]
                dy = ys[i] - ys[j]
                if dx * dx + dy * dy <= rr:
                    total += 1
    return total


def cross_pair_count(const double[::1] xs1, const double[::1] ys1,
                     const double[::1] xs2, const double[::1] ys2, double r):
    """Number of pairs (one point from each set) with distance <= r."""
    cdef Py_ssize_t n1 = xs1.shape[0]
    cdef Py_ssize_t n2 = xs2.shape[0]
    cdef double rr = r * r
    cdef double dx, dy
    cdef int64_t total = 0
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n1):
            for j in range(n2):
                dx = xs1[i] - xs2[j]
                dy = ys1[i] - ys2[j]
                if dx * dx + dy * dy <= rr:
                    total += 1
    return total


def close_neighbor_mask(const double[::1] xs, const double[::1] ys, double r):
    """Boolean mask of points having at least one neighbor within r."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef double rr = r * r
    cdef double dx, dy
    out = np.zeros(n, dtype=np.bool_)
    cdef unsigned char[::1] v = out.view(np.uint8)
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                dx = xs[i] - xs[j]
                dy = ys[i] - ys[j]
                if dx * dx + dy * dy <= rr:
                    v[i] = 1
                    v[j] = 1
    return out


def close_pair_counts_batch(const double[:, ::1] xs, const double[:, ::1] ys,
                            double r):
    """Row-wise close-pair counts for a batch of point sets.

    xs, ys: shape (m, n); row k holds the coordinates of the k-th set.
    Returns int64 array of length m.
    """
    cdef Py_ssize_t m = xs.shape[0]
    cdef Py_ssize_t n = xs.shape[1]
    cdef double rr = r * r
    cdef double dx, dy
    out = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] v = out
    cdef int64_t total
    cdef Py_ssize_t k, i, j
    with nogil:
        for k in range(m):
            total = 0
            for i in range(n):
                for j in range(i + 1, n):
                    dx = xs[k, i] - xs[k, j]
                    dy = ys[k, i] - ys[k, j]
                    if dx * dx + dy * dy <= rr:
                        total += 1
            v[k] = total
    return out
