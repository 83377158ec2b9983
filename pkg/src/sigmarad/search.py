"""Exhaustive searches: solutions of sigma(n) = rad(n)^2 and mutual prime pairs."""
from __future__ import annotations

import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import sieve
from .arith import Factorization, factorize, is_prime, radical, sigma, sigma_pp

__all__ = [
    "SearchConfig",
    "MutualPair",
    "solution_search",
    "mutual_pair_search",
    "chain_step",
    "default_workers",
    "MAX_LIMIT",
]

# Keeps sigma(n) and partial products inside uint64 in both kernels.
MAX_LIMIT = 2**40
WORKERS_ENV = "SIGMARAD_WORKERS"


def default_workers() -> int:
    value = os.environ.get(WORKERS_ENV)
    if value:
        n = int(value)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be positive")
        return n
    return 1


@dataclass(frozen=True)
class SearchConfig:
    limit: int
    block_size: int = 1 << 20
    worker_count: int = 1

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError("limit must be >= 1")
        if self.limit > MAX_LIMIT:
            raise ValueError(f"limit must be <= {MAX_LIMIT}")
        if self.block_size < 2:
            raise ValueError("block_size must be >= 2")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")

    def blocks(self) -> list[tuple[int, int]]:
        """Half-open [lo, hi) ranges covering 1..limit, in order."""
        return [(lo, min(lo + self.block_size, self.limit + 1))
                for lo in range(1, self.limit + 1, self.block_size)]


def _run_block(args):
    lo, hi, primes, backend = args
    return sieve.backend(backend).block_hits(lo, hi, primes)


def _confirm(n: int) -> bool:
    f = factorize(n)
    return sigma(f) == radical(f) ** 2


def solution_search(cfg: SearchConfig, progress: Callable[[int, int], None] | None = None,
                    backend: str | None = None) -> list[int]:
    """All n <= cfg.limit with sigma(n) = rad(n)^2, ascending.

    Blocks run independently (optionally in worker processes) and are merged
    by block index; every sieve hit is re-checked with exact arithmetic.
    """
    primes = sieve.base_primes(cfg.limit)
    backend = backend or sieve.BACKEND
    blocks = cfg.blocks()
    tasks = [(lo, hi, primes, backend) for lo, hi in blocks]
    results: dict[int, list[int]] = {}
    if cfg.worker_count == 1:
        for i, task in enumerate(tasks):
            results[i] = _run_block(task)
            if progress:
                progress(i + 1, len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            for i, hits in enumerate(pool.map(_run_block, tasks)):
                results[i] = hits
                if progress:
                    progress(i + 1, len(tasks))
    found = []
    for i in range(len(blocks)):
        found.extend(n for n in results[i] if _confirm(n))
    return found


def stderr_progress(done: int, total: int) -> None:
    print(f"\rblocks {done}/{total}", end="" if done < total else "\n", file=sys.stderr, flush=True)


class MutualPair(NamedTuple):
    p: int
    q: int

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def mutual_pair_search(bound: int) -> list[MutualPair]:
    """Primes p < q <= bound with p | sigma(q^2) and q | sigma(p^2).

    For each prime q the candidates p are the prime factors of q^2 + q + 1
    below q, so the cost is one factorization per prime.
    """
    if bound < 3:
        return []
    primes = [int(p) for p in _primes_upto(bound)]
    pairs = []
    for q in primes:
        for p, _ in factorize(q * q + q + 1):
            if p < q and (p * p + p + 1) % q == 0:
                pairs.append(MutualPair(p, q))
    return sorted(pairs)


def _primes_upto(n: int):
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags)


def chain_step(q: int) -> Factorization:
    """Factorization of sigma(q^2) = q^2 + q + 1."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return factorize(sigma_pp(q, 2))


def timed_search(cfg: SearchConfig, **kw) -> tuple[list[int], float]:
    t0 = time.perf_counter()
    found = solution_search(cfg, **kw)
    return found, time.perf_counter() - t0
