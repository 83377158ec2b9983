"""Backend selection for the block sieve.

The compiled kernel is used when it was built; set ``SIGMARAD_PURE_PYTHON=1``
to force the numpy fallback.
"""
from __future__ import annotations

import math
import os

import numpy as np

from . import _sieve_py

__all__ = ["BACKEND", "block_sigma_radical", "block_hits", "base_primes", "backend"]

_ext = None
if not os.environ.get("SIGMARAD_PURE_PYTHON"):
    try:
        from . import _sieve_ext as _ext
    except ImportError:
        _ext = None

BACKEND = "cython" if _ext is not None else "numpy"


def backend(name: str | None = None):
    """The kernel module for ``name`` ("cython" or "numpy"); default is BACKEND."""
    name = name or BACKEND
    if name == "numpy":
        return _sieve_py
    if name == "cython":
        if _ext is None:
            raise RuntimeError("compiled sieve kernel is not available")
        return _ext
    raise ValueError(f"unknown backend {name!r}")


def block_sigma_radical(lo: int, hi: int, primes):
    return backend().block_sigma_radical(lo, hi, primes)


def block_hits(lo: int, hi: int, primes) -> list[int]:
    return backend().block_hits(lo, hi, primes)


def base_primes(limit: int) -> np.ndarray:
    """All primes up to isqrt(limit), as uint64."""
    r = math.isqrt(max(limit, 1))
    flags = np.ones(r + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(r) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags).astype(np.uint64)
