# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-sum DP kernels.

Same contract as ``_pykernels``: exact integer tables. The DP runs in C over
uint64 residues modulo enough 62-bit primes to cover the a priori bound on
every entry (C(n, k) for tables, 2^n for totals). Exact values are rebuilt
with Garner's mixed-radix CRT.
"""
import math

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libc.string cimport memcpy

from ._modprimes import garner_constants, primes_for_bound

cnp.import_array()

cdef extern from *:
    """
    static inline unsigned long long ws_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long q) {
        return (unsigned long long)(((unsigned __int128)a * b) % q);
    }
    """
    unsigned long long ws_mulmod(unsigned long long a, unsigned long long b,
                                 unsigned long long q) nogil

__all__ = ["subset_table", "subset_totals"]


cdef inline void _shift_add(uint64_t* dst, const uint64_t* src, Py_ssize_t p,
                            Py_ssize_t v, uint64_t q) noexcept nogil:
    # dst[b] += src[b - v mod p]  (mod q)
    cdef Py_ssize_t b
    cdef uint64_t x
    for b in range(v, p):
        x = dst[b] + src[b - v]
        if x >= q:
            x -= q
        dst[b] = x
    for b in range(v):
        x = dst[b] + src[b - v + p]
        if x >= q:
            x -= q
        dst[b] = x


cdef void _table_mod(const int64_t[::1] slots, Py_ssize_t p, Py_ssize_t kmax,
                     uint64_t q, uint64_t[:, ::1] T) noexcept nogil:
    cdef Py_ssize_t s, k, used = 0, top
    T[0, 0] = 1
    for s in range(slots.shape[0]):
        used += 1
        top = kmax if kmax < used else used
        for k in range(top, 0, -1):
            _shift_add(&T[k, 0], &T[k - 1, 0], p, slots[s], q)


cdef void _totals_mod(const int64_t[::1] slots, Py_ssize_t p, uint64_t q,
                      uint64_t[::1] row, uint64_t[::1] tmp) noexcept nogil:
    cdef Py_ssize_t s
    row[0] = 1
    for s in range(slots.shape[0]):
        memcpy(&tmp[0], &row[0], p * sizeof(uint64_t))
        _shift_add(&row[0], &tmp[0], p, slots[s], q)


cdef void _garner(uint64_t[:, ::1] R, const uint64_t[::1] primes,
                  const uint64_t[:, ::1] inv) noexcept nogil:
    # In place: R[i, e] becomes the i-th mixed-radix digit of entry e.
    cdef Py_ssize_t i, j, e, nq = R.shape[0], N = R.shape[1]
    cdef uint64_t x, d, qi
    for e in range(N):
        for i in range(1, nq):
            qi = primes[i]
            x = R[i, e]
            for j in range(i):
                d = R[j, e] % qi
                x = x + qi - d if x < d else x - d
                x = ws_mulmod(x, inv[i, j], qi)
            R[i, e] = x


def _reconstruct(R, list primes):
    """Exact integers from residues R[prime, entry] (all entries >= 0)."""
    cdef Py_ssize_t nq = len(primes), i, j
    if nq > 1:
        inv = np.zeros((nq, nq), dtype=np.uint64)
        for i, row in enumerate(garner_constants(primes)):
            for j, c in enumerate(row):
                inv[i, j] = c
        _garner(R, np.asarray(primes, dtype=np.uint64), inv)
    vals = R[nq - 1].tolist()
    for i in range(nq - 2, -1, -1):
        q = primes[i]
        vals = [v * q + d for v, d in zip(vals, R[i].tolist())]
    return vals


def subset_table(slots, Py_ssize_t p, Py_ssize_t kmax):
    """table[k][b] = number of k-element sub-multisets of slots summing to b mod p."""
    cdef Py_ssize_t n = len(slots), nq, i, k
    sl = np.ascontiguousarray(slots, dtype=np.int64)
    if n and (sl.min() < 0 or sl.max() >= p):
        raise ValueError("slot values must be canonical residues")
    bound = max(math.comb(n, k) for k in range(min(kmax, n) + 1))
    primes = primes_for_bound(bound)
    nq = len(primes)
    R = np.zeros((nq, (kmax + 1) * p), dtype=np.uint64)
    for i in range(nq):
        _table_mod(sl, p, kmax, primes[i], R[i].reshape(kmax + 1, p))
    flat = _reconstruct(R, primes)
    return [flat[k * p : (k + 1) * p] for k in range(kmax + 1)]


def subset_totals(slots, Py_ssize_t p):
    """totals[b] = number of sub-multisets of slots (any size) summing to b mod p."""
    cdef Py_ssize_t i
    n = len(slots)  # Python int: 1 << n must not be a C shift
    sl = np.ascontiguousarray(slots, dtype=np.int64)
    if n and (sl.min() < 0 or sl.max() >= p):
        raise ValueError("slot values must be canonical residues")
    primes = primes_for_bound(1 << n)
    R = np.zeros((len(primes), p), dtype=np.uint64)
    tmp = np.empty(p, dtype=np.uint64)
    for i in range(len(primes)):
        _totals_mod(sl, p, primes[i], R[i], tmp)
    return _reconstruct(R, primes)
