"""Seeded generators of integers with prescribed divisor-graph structure.

Used by the test and acceptance suites:

* :func:`degree_law_instance` builds n whose L-set satisfies the closure
  preconditions and in which every vertex of N(L) has in-degree exactly 2,
  which is the local shape a solution of sigma(n) = rad(n)^2 must have;
* :func:`precondition_instance` drops the in-degree requirement;
* :func:`cycle_instance` embeds 3^2, 13^2, 61^2 so that N(L) is cyclic;
* :func:`random_factorization` draws small factorizations, and
  :func:`planted_chain_factorization` draws ones that contain a chain
  p -> q_1 -> ... -> q_k -> p' through exponent-2 primes.
"""
from __future__ import annotations

import random
from functools import lru_cache

from .arith import Factorization, factorize, sigma_pp
from .divisor_graph import DivisorGraph, Lemma40Report, build, l_set, lemma40_check

__all__ = [
    "Instance",
    "degree_law_instance",
    "precondition_instance",
    "cycle_instance",
    "random_factorization",
    "planted_chain_factorization",
]

_ODD_PRIMES = [p for p in range(3, 400) if all(p % d for d in range(2, int(p**0.5) + 1))]
_FEEDER_EXPONENTS = (3, 4, 5)
_MAX_TRIES = 10_000


class Instance:
    """An integer together with its graph and the closure check for l_set(n)."""

    __slots__ = ("factorization", "graph", "report")

    def __init__(self, f: Factorization):
        self.factorization = f
        self.graph: DivisorGraph = build(f)
        self.report: Lemma40Report = lemma40_check(self.graph, l_set(f))

    @property
    def n(self) -> int:
        return self.factorization.value

    def __repr__(self) -> str:
        return f"Instance({self.factorization})"


@lru_cache(maxsize=None)
def _sigma_primes(p: int, e: int) -> dict[int, int]:
    return dict(factorize(sigma_pp(p, e)).parts)


@lru_cache(maxsize=None)
def _feeders(q: int) -> tuple[tuple[int, int, int], ...]:
    """(p, e, v) with v = v_q(sigma(p^e)) in {1, 2}, for p^e that never lands in L or N."""
    out = []
    candidates = [(2, e) for e in range(1, 9)]
    candidates += [(p, e) for p in _ODD_PRIMES for e in _FEEDER_EXPONENTS]
    for p, e in candidates:
        if p == q:
            continue
        v = _sigma_primes(p, e).get(q, 0)
        if v in (1, 2):
            out.append((p, e, v))
    return tuple(out)


def _in_degree(exps: dict[int, int], q: int) -> int:
    return sum(_sigma_primes(p, e).get(q, 0) for p, e in exps.items())


def _attempt(rng: random.Random, max_l: int, m_prob: float) -> Factorization | None:
    L = rng.sample(_ODD_PRIMES[:40], rng.randint(1, max_l))
    exps = {p: 1 for p in L}
    targets = list(L)
    # optionally hang one exponent-2 prime above an L vertex
    if rng.random() < m_prob:
        ell = rng.choice(L)
        ms = [m for m in _ODD_PRIMES if m not in exps and _sigma_primes(m, 2).get(ell, 0) in (1, 2)]
        if ms:
            m = rng.choice(ms)
            exps[m] = 2
            targets.append(m)
    for _ in range(8):
        short = [q for q in targets if _in_degree(exps, q) < 2]
        if any(_in_degree(exps, q) > 2 for q in targets):
            return None
        if not short:
            break
        q = short[0]
        need = 2 - _in_degree(exps, q)
        options = [(p, e) for p, e, v in _feeders(q) if v <= need and p not in exps]
        if not options:
            return None
        p, e = rng.choice(options)
        exps[p] = e
    else:
        return None
    return Factorization.from_pairs(exps.items())


def degree_law_instance(rng: random.Random, max_l: int = 2, m_prob: float = 0.8) -> Instance:
    """A random n whose L-set passes the closure preconditions with the in-degree law.

    Candidates are assembled greedily (L primes, an optional exponent-2 prime
    feeding one of them, then prime powers topping each in-degree up to 2) and
    validated with the real graph; failures are retried.
    """
    for _ in range(_MAX_TRIES):
        f = _attempt(rng, max_l, m_prob)
        if f is None:
            continue
        inst = Instance(f)
        r = inst.report
        if r.L and r.preconditions_hold and r.degree_law_holds:
            return inst
    raise RuntimeError("no instance found; loosen the parameters")


def precondition_instance(rng: random.Random) -> Instance:
    """A random n with non-empty L whose closure preconditions hold."""
    for _ in range(_MAX_TRIES):
        inst = Instance(random_factorization(rng, max_prime=200, exponents=(1, 2, 4)))
        if inst.report.L and inst.report.preconditions_hold:
            return inst
    raise RuntimeError("no instance found")


def cycle_instance(rng: random.Random) -> Instance:
    """3^2 * 13^2 * 61^2 * 97 times a few random prime powers.

    61^2 -> 97 puts 97 in L and the whole 3, 13, 61 cluster in N(L), where
    3^2 -> 13^2 -> 3 and 3^2 -> 13^2 -> 61^2 -> 3 are cycles.
    """
    exps = {3: 2, 13: 2, 61: 2, 97: 1}
    others = [p for p in [2] + _ODD_PRIMES if p not in exps]
    for p in rng.sample(others, rng.randint(0, 3)):
        exps[p] = rng.choice((1, 3, 4)) if p != 2 else rng.randint(1, 4)
    return Instance(Factorization.from_pairs(exps.items()))


def random_factorization(rng: random.Random, max_prime: int = 500,
                         exponents: tuple[int, ...] = (1, 2, 4), max_omega: int = 6) -> Factorization:
    primes = [2] + [p for p in _ODD_PRIMES if p <= max_prime]
    if max_prime > _ODD_PRIMES[-1]:
        primes += [p for p in range(_ODD_PRIMES[-1] + 2, max_prime + 1, 2)
                   if all(p % d for d in range(3, int(p**0.5) + 1, 2))]
    chosen = rng.sample(primes, rng.randint(1, max_omega))
    return Factorization.from_pairs((p, rng.choice(exponents)) for p in chosen)


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def planted_chain_factorization(rng: random.Random, max_prime: int = 500,
                                exponents: tuple[int, ...] = (1, 2, 4), extra: int = 3) -> Factorization:
    """Random factorization with a planted chain, primes <= max_prime.

    Walks q_1 | sigma(p^a), q_{i+1} | sigma(q_i^2), p' | sigma(q_k^2) among
    odd primes below the bound, with a in {1, 2} and k in {1, 2, 3}, gives
    p, p' exponent 1 and the q_i exponent 2, then adds a few random prime
    powers.  The walk may stop early, so not every draw keeps its chain.
    """
    odd = [p for p in _primes_upto(max_prime) if p > 2]
    exps: dict[int, int] = {}
    p = rng.choice(odd)
    exps[p] = 1
    cur, a = p, rng.choice((1, 2))
    for _ in range(rng.randint(1, 3)):
        nxt = [q for q in odd if q not in exps and sigma_pp(cur, a) % q == 0]
        if not nxt:
            break
        cur, a = rng.choice(nxt), 2
        exps[cur] = 2
    ends = [q for q in odd if q not in exps and sigma_pp(cur, 2) % q == 0]
    if ends and cur != p:
        exps[rng.choice(ends)] = 1
    pool = [q for q in [2] + odd if q not in exps]
    for q in rng.sample(pool, rng.randint(0, extra)):
        exps[q] = rng.choice(exponents)
    return Factorization.from_pairs(exps.items())
