"""Numpy block sieve for sigma(n) and rad(n); fallback for the compiled kernel.

Works prime by prime on strided slices: multiples of p, then of p^2, ...
Everything is uint64 arithmetic, so the same wrap-around caveat as the
compiled kernel applies to rad(n)^2 (false hits only).
"""
from __future__ import annotations

import numpy as np


def block_sigma_radical(lo: int, hi: int, primes) -> tuple[np.ndarray, np.ndarray]:
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    size = hi - lo
    rem = np.arange(lo, hi, dtype=np.uint64)
    sig = np.ones(size, dtype=np.uint64)
    rad = np.ones(size, dtype=np.uint64)
    top = hi - 1
    for p in primes:
        p = int(p)
        if p * p > top:
            break
        up = np.uint64(p)
        start = (-lo) % p
        if start >= size:
            continue
        view = slice(start, None, p)
        rem[view] //= up
        rad[view] *= up
        # sigma factor for exponent e is (p^(e+1) - 1)/(p - 1); grow it per power
        prev_term = 1 + p
        sig[view] *= np.uint64(prev_term)
        pk = p * p
        while pk <= top:
            start = (-lo) % pk
            if start >= size:
                break
            view = slice(start, None, pk)
            rem[view] //= up
            term = prev_term + pk
            sig[view] = sig[view] // np.uint64(prev_term) * np.uint64(term)
            prev_term = term
            pk *= p
    big = rem > 1
    sig[big] *= rem[big] + np.uint64(1)
    rad[big] *= rem[big]
    return sig, rad


def block_hits(lo: int, hi: int, primes) -> list[int]:
    sig, rad = block_sigma_radical(lo, hi, primes)
    idx = np.flatnonzero(sig == rad * rad)
    return [lo + int(i) for i in idx]
