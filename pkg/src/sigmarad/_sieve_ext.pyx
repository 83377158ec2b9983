# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled block sieve for sigma(n) and rad(n).

Same contract as ``sigmarad._sieve_py``.  Arithmetic is modulo 2**64; for
n <= 10**10 sigma(n) and rad(n) fit, and rad(n)^2 may wrap, which can only
produce false hits (every hit is re-checked exactly by the caller).
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint32_t, uint64_t

cnp.import_array()


cdef enum:
    TILE = 32768


cdef void _fill(uint64_t lo, uint64_t hi, const uint64_t[::1] primes,
                uint64_t[::1] acc, uint64_t[::1] sig, uint64_t[::1] rad,
                uint32_t[::1] stamp) noexcept nogil:
    # Works tile by tile so the four arrays stay in cache.  Within a tile,
    # for each prime p the multiples of p^k are walked from the largest k
    # down; the first visit fixes the exponent of p and later visits are
    # skipped via ``stamp``.  The only division is one per element at the end,
    # recovering the cofactor above sqrt(hi).
    cdef Py_ssize_t size = <Py_ssize_t>(hi - lo)
    cdef Py_ssize_t i, j, t0, t1
    cdef uint64_t p, pk, top = hi - 1, x, tlo, thi
    cdef uint64_t powers[64]
    cdef uint64_t terms[64]
    cdef int k, kmax
    for i in range(size):
        acc[i] = 1
        sig[i] = 1
        rad[i] = 1
        stamp[i] = 0
    t0 = 0
    while t0 < size:
        t1 = t0 + TILE
        if t1 > size:
            t1 = size
        tlo = lo + <uint64_t>t0
        thi = lo + <uint64_t>t1
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p > top:
                break
            powers[1] = p
            terms[1] = 1 + p
            kmax = 1
            while powers[kmax] <= (thi - 1) // p:
                powers[kmax + 1] = powers[kmax] * p
                terms[kmax + 1] = terms[kmax] + powers[kmax + 1]
                kmax += 1
            for k in range(kmax, 0, -1):
                pk = powers[k]
                i = <Py_ssize_t>(((tlo + pk - 1) // pk) * pk - lo)
                while i < t1:
                    if stamp[i] != <uint32_t>j + 1:
                        stamp[i] = <uint32_t>j + 1
                        acc[i] = acc[i] * pk
                        sig[i] = sig[i] * terms[k]
                        rad[i] = rad[i] * p
                    i = i + <Py_ssize_t>pk
        t0 = t1
    for i in range(size):
        x = (lo + <uint64_t>i) // acc[i]
        if x > 1:
            sig[i] = sig[i] * (x + 1)
            rad[i] = rad[i] * x


def block_sigma_radical(lo, hi, primes):
    """sigma(n) and rad(n) for lo <= n < hi as two uint64 arrays.

    ``primes`` must contain every prime up to isqrt(hi - 1).
    """
    cdef uint64_t clo = lo, chi = hi
    if clo < 1 or chi < clo:
        raise ValueError("need 1 <= lo <= hi")
    cdef const uint64_t[::1] pv = np.ascontiguousarray(primes, dtype=np.uint64)
    size = chi - clo
    acc = np.empty(size, dtype=np.uint64)
    sig = np.empty(size, dtype=np.uint64)
    rad = np.empty(size, dtype=np.uint64)
    stamp = np.empty(size, dtype=np.uint32)
    cdef uint64_t[::1] av = acc, sv = sig, dv = rad
    cdef uint32_t[::1] tv = stamp
    if size:
        with nogil:
            _fill(clo, chi, pv, av, sv, dv, tv)
    return sig, rad


def block_hits(lo, hi, primes):
    """n in [lo, hi) with sigma(n) == rad(n)**2 modulo 2**64."""
    cdef uint64_t clo = lo, chi = hi
    if clo < 1 or chi < clo:
        raise ValueError("need 1 <= lo <= hi")
    cdef const uint64_t[::1] pv = np.ascontiguousarray(primes, dtype=np.uint64)
    size = chi - clo
    acc = np.empty(size, dtype=np.uint64)
    sig = np.empty(size, dtype=np.uint64)
    rad = np.empty(size, dtype=np.uint64)
    stamp = np.empty(size, dtype=np.uint32)
    cdef uint64_t[::1] av = acc, sv = sig, dv = rad
    cdef uint32_t[::1] tv = stamp
    cdef Py_ssize_t i
    hits = []
    if size:
        with nogil:
            _fill(clo, chi, pv, av, sv, dv, tv)
        for i in range(<Py_ssize_t>size):
            if sv[i] == dv[i] * dv[i]:
                hits.append(clo + i)
    return hits
