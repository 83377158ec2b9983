"""Ledger of concrete arithmetic claims, re-verified from scratch.

Claims live in ``data/claims.jsonl`` (one JSON object per line) and are
checked by a verifier that is generic over claim kinds.  Integer-valued
payload fields are small expressions:

* ``7`` -- a literal
* ``{"prod": [[p, e], ...]}`` -- product of prime powers
* ``{"sigma": [[p, e], ...]}`` -- sigma of that product (factored afresh)
* ``{"geom": [b, e]}`` -- 1 + b + ... + b^e, for any integer b
* ``{"h": [[p, e], ...]}`` -- the h-value of a set of prime powers
* ``{"add": [...]}``, ``{"mul": [...]}``, ``{"pow": [x, k]}``, ``{"frac": [a, b]}``

A claim that fails and carries ``known_typo`` plus a ``correction`` payload
of the same kind is reported as "corrected" when the correction holds.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .arith import (
    DETERMINISTIC_LIMIT,
    Factorization,
    divisor_sum_bruteforce,
    factorize,
    h_set,
    is_prime,
    sigma,
    sigma_pp,
)
from .divisor_graph import build

__all__ = [
    "KINDS",
    "Claim",
    "ClaimResult",
    "FactsReport",
    "LedgerError",
    "claim_catalog",
    "evaluate",
    "verify_claim",
    "verify_all",
]

KINDS = ("SigmaFactorization", "Primality", "Congruence", "Divisibility",
         "HInequality", "Equality", "GraphPath")
VERIFIED, REFUTED, CORRECTED = "verified", "refuted", "corrected"
BRUTE_FORCE_BASE = 10**4

_RELATIONS = {
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    "=": lambda a, b: a == b,
}


class LedgerError(ValueError):
    """Malformed claim, or an internal cross-check disagreed."""


@dataclass(frozen=True)
class Claim:
    id: str
    kind: str
    payload: dict
    source: str
    known_typo: bool = False
    family: str | None = None
    correction: dict | None = None
    note: str = ""

    @classmethod
    def from_dict(cls, d: dict) -> "Claim":
        unknown = set(d) - {"id", "kind", "payload", "source", "known_typo",
                            "family", "correction", "note"}
        if unknown:
            raise LedgerError(f"{d.get('id')}: unknown fields {sorted(unknown)}")
        c = cls(d["id"], d["kind"], d["payload"], d["source"],
                bool(d.get("known_typo", False)), d.get("family"),
                d.get("correction"), d.get("note", ""))
        if c.kind not in KINDS:
            raise LedgerError(f"{c.id}: unknown kind {c.kind!r}")
        if c.correction is not None and not c.known_typo:
            raise LedgerError(f"{c.id}: correction given without known_typo")
        return c


@dataclass(frozen=True)
class ClaimResult:
    id: str
    verdict: str
    computed: str
    note: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "computed": self.computed, "note": self.note}


@dataclass(frozen=True)
class FactsReport:
    """All results, serialized the same way as condition reports."""
    results: tuple[ClaimResult, ...]
    kind: str = field(default="facts")

    def counts(self) -> dict[str, int]:
        out = {VERIFIED: 0, CORRECTED: 0, REFUTED: 0}
        for r in self.results:
            out[r.verdict] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.verdict != REFUTED for r in self.results)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "counts": self.counts(),
                "results": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "FactsReport":
        return cls(tuple(ClaimResult(**r) for r in d["results"]), d["kind"])

    @classmethod
    def from_json(cls, text: str) -> "FactsReport":
        return cls.from_dict(json.loads(text))


# -- expressions ------------------------------------------------------------

def _pairs(raw) -> list[tuple[int, int]]:
    if not isinstance(raw, list) or not raw:
        raise LedgerError(f"expected a non-empty list of [p, e] pairs, got {raw!r}")
    out = []
    for item in raw:
        if len(item) != 2 or not all(isinstance(x, int) for x in item):
            raise LedgerError(f"bad prime power {item!r}")
        p, e = item
        if p < 2 or e < 1:
            raise LedgerError(f"bad prime power {item!r}")
        out.append((p, e))
    return out


def _prime_pairs(raw) -> list[tuple[int, int]]:
    pairs = _pairs(raw)
    for p, _ in pairs:
        if p >= DETERMINISTIC_LIMIT or not is_prime(p):
            raise LedgerError(f"{p} is not a (provable) prime")
    if len({p for p, _ in pairs}) != len(pairs):
        raise LedgerError(f"repeated prime in {raw!r}")
    return pairs


def evaluate(expr) -> int | Fraction:
    """Exact value of a payload expression."""
    if isinstance(expr, bool):
        raise LedgerError("booleans are not expressions")
    if isinstance(expr, int):
        return expr
    if not isinstance(expr, dict) or len(expr) != 1:
        raise LedgerError(f"bad expression {expr!r}")
    (op, arg), = expr.items()
    if op == "prod":
        return math.prod(p**e for p, e in _pairs(arg))
    if op == "sigma":
        value = math.prod(p**e for p, e in _pairs(arg))
        return sigma(factorize(value))
    if op == "geom":
        b, e = arg
        return sum(b**i for i in range(e + 1))
    if op == "h":
        return h_set(_prime_pairs(arg))
    if op == "add":
        return sum(evaluate(a) for a in arg)
    if op == "mul":
        return math.prod(evaluate(a) for a in arg)
    if op == "pow":
        base, k = arg
        return evaluate(base) ** k
    if op == "frac":
        return Fraction(*arg)
    raise LedgerError(f"unknown operator {op!r}")


def _integer(expr) -> int:
    v = evaluate(expr)
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise LedgerError(f"{expr!r} is not an integer")
        v = v.numerator
    return v


def render(expr) -> str:
    """Compact text form of an expression."""
    if isinstance(expr, int):
        return str(expr)
    (op, arg), = expr.items()
    if op in ("prod", "sigma", "h"):
        inner = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in arg)
        return inner if op == "prod" else f"{op}({inner})"
    if op == "geom":
        return f"(1+...+{arg[0]}^{arg[1]})"
    if op == "add":
        return "(" + " + ".join(render(a) for a in arg) + ")"
    if op == "mul":
        return " * ".join(render(a) for a in arg)
    if op == "pow":
        return f"{render(arg[0])}^{arg[1]}"
    if op == "frac":
        return f"{arg[0]}/{arg[1]}"
    return repr(expr)


# -- per-kind checks: each returns (holds, computed text) ---------------------

def _check_sigma_factorization(payload: dict) -> tuple[bool, str]:
    of = _prime_pairs(payload["of"])
    claimed = tuple(sorted(_pairs(payload["factors"])))
    arg = Factorization.from_pairs(of)
    value = sigma(factorize(arg.value))
    direct = math.prod(sigma_pp(p, e) for p, e in of)
    if direct != value:
        raise LedgerError(f"sigma cross-check failed for {arg}")
    if len(of) == 1 and of[0][0] <= BRUTE_FORCE_BASE:
        if divisor_sum_bruteforce(arg.value) != value:
            raise LedgerError(f"brute-force divisor sum disagrees for {arg}")
    truth = factorize(value)
    holds = tuple((p, e) for p, e in truth) == claimed
    return holds, f"sigma({arg}) = {value} = {truth}"


def _check_primality(payload: dict) -> tuple[bool, str]:
    n = _integer(payload["n"])
    if n >= DETERMINISTIC_LIMIT:
        raise LedgerError(f"{n} exceeds the deterministic primality range")
    holds = is_prime(n) == bool(payload["prime"])
    text = f"{render(payload['n'])} = {n}, {'prime' if is_prime(n) else 'composite: ' + str(factorize(n))}"
    if "value" in payload and payload["value"] != n:
        holds = False
        text += f" (printed value {payload['value']})"
    return holds, text


def _check_congruence(payload: dict) -> tuple[bool, str]:
    n = _integer(payload["n"])
    m = payload["mod"]
    r = n % m
    return r == payload["residue"] % m, f"{n} = {r} (mod {m})"


def _check_divisibility(payload: dict) -> tuple[bool, str]:
    d = _integer(payload["d"])
    n = _integer(payload["of"])
    q, r = divmod(n, d)
    text = f"{render(payload['of'])} = {n}; {d} {'divides' if r == 0 else 'does not divide'} it"
    if r == 0 and d > 1:
        # report the full power of each prime in d, which is what the case arguments use
        parts = []
        for p, _ in factorize(d):
            k, m = 0, n
            while m % p == 0:
                m //= p
                k += 1
            parts.append(f"v_{p} = {k}")
        text += " (" + ", ".join(parts) + ")"
    return r == 0, text


def _check_relation(payload: dict) -> tuple[bool, str]:
    rel = payload.get("rel", "=")
    if rel not in _RELATIONS:
        raise LedgerError(f"unknown relation {rel!r}")
    a = Fraction(evaluate(payload["lhs"]))
    b = Fraction(evaluate(payload["rhs"]))
    holds = _RELATIONS[rel](a, b)
    approx = f" ~ {float(a):.6g}" if a.denominator != 1 else ""
    rhs = payload["rhs"]
    rhs_text = str(b) if isinstance(rhs, int) else f"{render(rhs)} = {b}"
    return holds, f"{render(payload['lhs'])} = {a}{approx}; rhs {rhs_text}"


def _check_graph_path(payload: dict) -> tuple[bool, str]:
    pairs = _prime_pairs(payload["path"])
    g = build(Factorization.from_pairs(sorted(pairs)))
    walk = [p for p, _ in pairs]
    if payload.get("closed"):
        walk.append(walk[0])
    steps = []
    holds = True
    for u, v in zip(walk, walk[1:]):
        k = g.graph.multiplicity(u, v)
        holds = holds and k > 0
        u_label = f"{u}^{g.exponent(u)}" if g.exponent(u) > 1 else str(u)
        steps.append(f"{u_label} -[{k}]-> {v}")
    return holds, "; ".join(steps)


_CHECKS = {
    "SigmaFactorization": _check_sigma_factorization,
    "Primality": _check_primality,
    "Congruence": _check_congruence,
    "Divisibility": _check_divisibility,
    "HInequality": _check_relation,
    "Equality": _check_relation,
    "GraphPath": _check_graph_path,
}


def verify_claim(claim: Claim) -> ClaimResult:
    check = _CHECKS[claim.kind]
    try:
        holds, computed = check(claim.payload)
    except (KeyError, TypeError) as exc:
        raise LedgerError(f"{claim.id}: malformed payload ({exc})") from exc
    if holds:
        return ClaimResult(claim.id, VERIFIED, computed, claim.note)
    if claim.known_typo and claim.correction is not None:
        fixed, fixed_text = check(claim.correction)
        if fixed:
            note = "printed value is wrong; corrected claim holds: " + fixed_text
            if claim.note:
                note += ". " + claim.note
            return ClaimResult(claim.id, CORRECTED, computed, note)
    return ClaimResult(claim.id, REFUTED, computed, claim.note)


@lru_cache(maxsize=1)
def _load() -> tuple[Claim, ...]:
    text = resources.files("sigmarad").joinpath("data/claims.jsonl").read_text()
    claims = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            claims.append(Claim.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError) as exc:
            raise LedgerError(f"claims.jsonl line {lineno}: {exc}") from exc
    ids = [c.id for c in claims]
    if len(set(ids)) != len(ids):
        raise LedgerError("duplicate claim ids")
    return tuple(claims)


def claim_catalog() -> list[Claim]:
    """Every claim in the shipped ledger, in file order."""
    return list(_load())


def verify_all(claims: list[Claim] | None = None) -> list[ClaimResult]:
    """Verify each claim independently; results sorted by id."""
    claims = claim_catalog() if claims is None else claims
    return sorted((verify_claim(c) for c in claims), key=lambda r: r.id)


def report(claims: list[Claim] | None = None) -> FactsReport:
    return FactsReport(tuple(verify_all(claims)))
