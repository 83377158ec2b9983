"""Exact integer arithmetic: primality, factorization, sigma, radical and h.

Everything here is pure and works on Python ints of any size.  Rational
results are :class:`fractions.Fraction` values, always in lowest terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Union

__all__ = [
    "PrimePower",
    "Factorization",
    "M2M1Factors",
    "is_prime",
    "primality",
    "factorize",
    "sigma",
    "sigma_pp",
    "radical",
    "omega",
    "h_pp",
    "h_set",
    "h_int",
    "classify_m2m1",
    "divisor_sum_bruteforce",
    "DETERMINISTIC_LIMIT",
]

DETERMINISTIC_LIMIT = 2**64
_TRIAL_BOUND = 1000


def _small_primes(bound: int) -> list[int]:
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = _small_primes(_TRIAL_BOUND)
_SMALL_SET = frozenset(_SMALL_PRIMES)
# Deterministic for n < 3.3e24 (Sorenson-Webster); covers every n <= 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Smaller base sets with proven bounds (Jaeschke): first-k primes suffice below each limit.
_MR_TIERS = (
    (3_215_031_751, 4),
    (3_474_749_660_383, 6),
    (341_550_071_728_321, 7),
    (3_825_123_056_546_413_051, 9),
)
_EXTRA_BASES = (41, 43, 47, 53, 59, 61, 67, 71)


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int) -> str:
    """Classify ``n`` as ``"prime"``, ``"probable-prime"`` or ``"composite"``.

    Below 2**64 the answer is proven.  Above it ``"probable-prime"`` means
    ``n`` is a strong probable prime to 20 fixed bases.
    """
    if n < 2:
        return "composite"
    if n <= _TRIAL_BOUND:
        return "prime" if n in _SMALL_SET else "composite"
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return "composite"
    if n < _TRIAL_BOUND * _TRIAL_BOUND:
        return "prime" if all(n % p for p in _SMALL_PRIMES) else "composite"
    bases = _MR_BASES if n < DETERMINISTIC_LIMIT else _MR_BASES + _EXTRA_BASES
    for limit, k in _MR_TIERS:
        if n < limit:
            bases = _MR_BASES[:k]
            break
    if not all(_strong_probable_prime(n, a) for a in bases):
        return "composite"
    return "prime" if n < DETERMINISTIC_LIMIT else "probable-prime"


def is_prime(n: int) -> bool:
    return primality(n) != "composite"


class PrimePower(NamedTuple):
    p: int
    e: int

    @property
    def value(self) -> int:
        return self.p**self.e

    def __str__(self) -> str:
        return f"{self.p}^{self.e}" if self.e != 1 else str(self.p)


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: prime powers sorted by ascending prime.

    ``Factorization(())`` is the factorization of 1.
    """

    parts: tuple[PrimePower, ...] = ()

    def __post_init__(self):
        parts = tuple(PrimePower(int(p), int(e)) for p, e in self.parts)
        object.__setattr__(self, "parts", parts)
        prev = 1
        for p, e in parts:
            if p <= prev:
                raise ValueError(f"primes must be strictly increasing, got {p} after {prev}")
            if e < 1:
                raise ValueError(f"exponent of {p} must be positive, got {e}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p

    @classmethod
    def _proven(cls, pairs) -> "Factorization":
        """Skip validation; only for sorted pairs whose primes were just proven."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "parts", tuple(PrimePower(p, e) for p, e in pairs))
        return obj

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Factorization":
        """Build from unsorted (prime, exponent) pairs; repeated primes merge."""
        acc: dict[int, int] = {}
        for p, e in pairs:
            acc[p] = acc.get(p, 0) + e
        return cls(tuple(sorted(acc.items())))

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.parts)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.parts)

    def exponent(self, p: int) -> int:
        for q, e in self.parts:
            if q == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.parts)

    @property
    def e0(self) -> int:
        """Exponent of 2 (0 for odd n)."""
        return self.exponent(2)

    @property
    def odd_parts(self) -> tuple[PrimePower, ...]:
        """The odd prime powers p_1^e_1, ..., p_s^e_s in ascending order."""
        return tuple(pp for pp in self.parts if pp.p != 2)

    def __iter__(self) -> Iterator[PrimePower]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "1"
        return " * ".join(str(pp) for pp in self.parts)


FactorLike = Union[Factorization, int]


def _as_factorization(f: FactorLike) -> Factorization:
    if isinstance(f, Factorization):
        return f
    return factorize(f)


def _rho_brent(n: int, c: int) -> int:
    """One Pollard rho run with Brent's cycle finding; may return n."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r <<= 1
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def _split(n: int) -> int:
    """A nontrivial factor of the composite odd ``n``."""
    r = math.isqrt(n)
    if r * r == n:
        return r
    c = 1
    while True:
        d = _rho_brent(n, c)
        if 1 < d < n:
            return d
        c += 1


def _factor_into(n: int, acc: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            acc[m] = acc.get(m, 0) + 1
            continue
        d = _split(m)
        stack.append(d)
        stack.append(m // d)


@lru_cache(maxsize=65536)
def _factorize_cached(n: int) -> Factorization:
    acc: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            acc[p] = e
    if n > 1:
        if n < _TRIAL_BOUND * _TRIAL_BOUND:
            acc[n] = 1          # no prime factor below 1000, so n is prime
        else:
            _factor_into(n, acc)
    return Factorization._proven(sorted(acc.items()))


def factorize(n: int) -> Factorization:
    """Complete factorization of ``n >= 1``.

    Trial division by primes below 1000, then Pollard rho (Brent variant) on
    the cofactor.  Deterministic: the rho constants are tried in order.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    return _factorize_cached(n)


def sigma_pp(p: int, e: int) -> int:
    """sigma(p^e) = 1 + p + ... + p^e."""
    return (p ** (e + 1) - 1) // (p - 1)


def sigma(f: FactorLike) -> int:
    return math.prod(sigma_pp(p, e) for p, e in _as_factorization(f))


def radical(f: FactorLike) -> int:
    return math.prod(p for p, _ in _as_factorization(f))


def omega(f: FactorLike) -> int:
    return len(_as_factorization(f))


def h_pp(p: int, e: int) -> Fraction:
    return Fraction(sigma_pp(p, e), p * p)


def h_set(S: Iterable[tuple[int, int]]) -> Fraction:
    """Product of sigma(p^e)/p^2 over a set of prime powers with distinct primes."""
    seen: set[int] = set()
    result = Fraction(1)
    for p, e in S:
        if p in seen:
            raise ValueError(f"prime {p} occurs twice")
        seen.add(p)
        result *= h_pp(p, e)
    return result


def h_int(f: FactorLike) -> Fraction:
    """sigma(n)/rad(n)^2; equals 1 exactly for solutions of sigma(n) = rad(n)^2."""
    return h_set(_as_factorization(f))


def divisor_sum_bruteforce(n: int) -> int:
    """Sum of divisors by trial division up to sqrt(n); an oracle, not fast."""
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
    return total


@dataclass(frozen=True)
class M2M1Factors:
    """Prime factors of m^2 + m + 1, each tagged by its class mod 3."""

    m: int
    value: int
    factors: tuple[tuple[int, str], ...]
    three_divides: bool

    @property
    def consistent(self) -> bool:
        """True when every prime is 3 or 1 mod 3 and 3 | value iff m = 1 mod 3."""
        tags_ok = all(tag != "other" for _, tag in self.factors)
        return tags_ok and self.three_divides == (self.m % 3 == 1)


def classify_m2m1(m: int) -> M2M1Factors:
    if m < 1:
        raise ValueError("m must be positive")
    v = m * m + m + 1
    tagged = []
    for p, _ in factorize(v):
        if p == 3:
            tag = "three"
        elif p % 3 == 1:
            tag = "1 mod 3"
        else:
            tag = "other"
        tagged.append((p, tag))
    return M2M1Factors(m, v, tuple(tagged), v % 3 == 0)

