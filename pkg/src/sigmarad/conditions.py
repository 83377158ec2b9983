"""Necessary conditions for solutions of sigma(n) = rad(n)^2 other than 1 and 1782.

A ``violated`` verdict certifies that n is not such a solution.  A ``holds``
verdict certifies nothing about solutionhood.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .arith import Factorization, factorize, is_prime, sigma_pp
from .divisor_graph import build, closure_parts, l_set

__all__ = [
    "HOLDS",
    "VIOLATED",
    "NOT_APPLICABLE",
    "KNOWN_SOLUTIONS",
    "Check",
    "ConditionReport",
    "FormClass",
    "ChainWitness",
    "literature_conditions",
    "bkkl_classify",
    "chain_witnesses",
    "theorem12_report",
    "luca_log_bound",
    "luca_loglog_bound",
]

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"
KNOWN_SOLUTIONS = frozenset({1, 1782})
DISCLAIMER = ("necessary conditions only: 'violated' rules n out as a solution "
              "other than 1 and 1782; 'holds' proves nothing")


@dataclass(frozen=True)
class Check:
    id: str
    verdict: str
    witness: Any
    note: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "witness": self.witness, "note": self.note}


@dataclass(frozen=True)
class ConditionReport:
    kind: str
    n: int
    factorization: str
    checks: tuple[Check, ...]
    notes: tuple[str, ...] = ()
    known_solution: bool = False
    semantics: str | None = None

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    @property
    def violated(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == VIOLATED]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": str(self.n),
            "factorization": self.factorization,
            "known_solution": self.known_solution,
            "semantics": self.semantics,
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionReport":
        checks = tuple(Check(c["id"], c["verdict"], c["witness"], c.get("note", "")) for c in d["checks"])
        return cls(d["kind"], int(d["n"]), d["factorization"], checks, tuple(d.get("notes", ())),
                   d.get("known_solution", False), d.get("semantics"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ConditionReport":
        return cls.from_dict(json.loads(text))


def _fact(f) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def _pp(p: int, e: int) -> str:
    return f"{p}^{e}"


@dataclass(frozen=True)
class FormClass:
    """Which of the two admissible exponent/residue shapes n has.

    Form A: p1 = 3 mod 8 with e1 = 1, every other odd exponent even.
    Form B: p1 = p2 = e1 = e2 = 1 mod 4, min(e1, e2) = 1, other odd exponents
    even.  In form B, p1 is the prime with exponent 1 (the smaller one if both).
    """

    tag: str
    p1: int | None = None
    p2: int | None = None
    note: str = ""


def bkkl_classify(f) -> FormClass:
    f = _fact(f)
    if f.e0 == 0:
        return FormClass("neither", note="n is odd")
    odd = f.odd_parts
    odd_exp = [(p, e) for p, e in odd if e % 2 == 1]
    form_a = form_b = None
    a_candidates = [p for p, e in odd_exp if e == 1 and p % 8 == 3]
    if len(odd_exp) == 1 and a_candidates:
        form_a = FormClass("A", min(a_candidates))
    if len(odd_exp) == 2:
        (pa, ea), (pb, eb) = odd_exp
        if all(x % 4 == 1 for x in (pa, pb, ea, eb)) and min(ea, eb) == 1:
            p1, p2 = (pa, pb) if (ea, pa) <= (eb, pb) else (pb, pa)
            form_b = FormClass("B", p1, p2)
    if form_a and form_b:
        return FormClass("A", form_a.p1, note="also fits form B; reported as A")
    return form_a or form_b or FormClass("neither")


def _prime_or_prime_square(m: int) -> bool:
    if is_prime(m):
        return True
    r = math.isqrt(m)
    return r * r == m and is_prime(r)


def literature_conditions(f) -> ConditionReport:
    """Evaluate the previously published necessary conditions on n."""
    f = _fact(f)
    n = f.value
    exps = f.as_dict()
    odd = f.odd_parts
    w = len(f)
    checks: list[Check] = []

    def add(cid, ok, witness, note=""):
        checks.append(Check(cid, HOLDS if ok else VIOLATED, witness, note))

    def na(cid, why):
        checks.append(Check(cid, NOT_APPLICABLE, why))

    add("ed-even", f.e0 >= 1, f"2^{f.e0} || n" if f.e0 else "n is odd")
    add("ed-omega-ge-4", w >= 4, f"omega(n) = {w}")
    sq = [_pp(p, e) for p, e in f if e >= 2]
    single = [str(p) for p, e in f if e == 1]
    add("ed-not-squarefree", bool(sq), sq[0] if sq else "every exponent is 1")
    add("ed-not-squarefull", bool(single), f"{single[0]} || n" if single else "every exponent is >= 2")
    add("ed-gt-1e9", n > 10**9, f"n = {n}")
    bad = [_pp(p, e) for p, e in f if e % 4 == 3]
    add("ed-no-exponent-3-mod-4", not bad, bad if bad else "no exponent is 3 mod 4")

    form = bkkl_classify(f)
    add("bkkl-form", form.tag != "neither",
        {"form": form.tag, "p1": form.p1, "p2": form.p2} if form.tag != "neither" else "fits neither form (a) nor (b)",
        form.note)
    add("bkkl-omega-ge-5", w >= 5, f"omega(n) = {w}")
    fourth = [_pp(p, e) for p, e in f if e >= 4]
    add("bkkl-not-fourth-power-free", bool(fourth), fourth[0] if fourth else "every exponent is < 4")
    odd_fourth = [_pp(p, e) for p, e in odd if e >= 4]
    add("bdz-odd-fourth-power", bool(odd_fourth), odd_fourth[0] if odd_fourth else "no odd prime with exponent >= 4")

    if form.tag == "A":
        p1 = form.p1
        add("bdz-p1-ge-43", p1 >= 43, f"p1 = {p1}")
        add("ct-divisible-by-3", 3 in exps, f"3^{exps.get(3, 0)} || n")
        add("ct-two-odd-fourth-powers", len(odd_fourth) >= 2, odd_fourth or "none")
        add("ct-p1-ge-1571", p1 >= 1571, f"p1 = {p1}")
        above = [p for p, _ in odd if p > p1]
        add("ct-at-most-two-above-p1", len(above) <= 2, above)
        twos = [p for p, e in f if e == 2]
        add("ct-exponent-2-at-least-twice", len(twos) >= 2, twos)
        need2 = [_pp(p, e) for p, e in odd if p != p1 and 10 * p * p >= p1 and e != 2]
        add("ct-exponent-2-when-10p2-ge-p1", not need2,
            need2 or f"every odd p != p1 with 10p^2 >= {p1} has exponent 2")
    else:
        for cid in ("bdz-p1-ge-43", "ct-divisible-by-3", "ct-two-odd-fourth-powers", "ct-p1-ge-1571",
                    "ct-at-most-two-above-p1", "ct-exponent-2-at-least-twice",
                    "ct-exponent-2-when-10p2-ge-p1"):
            na(cid, "applies to form (a) only")
    if form.tag == "B" and exps[form.p1] == 1 and exps[form.p2] > 1:
        add("bdz-p1-ge-173", form.p1 >= 173, f"p1 = {form.p1}, e2 = {exps[form.p2]}")
    else:
        na("bdz-p1-ge-173", "applies to form (b) with e2 > e1 = 1 only")

    counted = [e + 1 for _, e in f]
    good = [m for m in counted if _prime_or_prime_square(m)]
    add("ct-half-exponents-prime-or-prime-square", 2 * len(good) >= len(counted),
        {"e+1": counted, "prime_or_prime_square": good})
    tz_shape = f.e0 == 1 and sorted(e for _, e in odd) == [1, 1, 4, 4]
    add("tz-not-2-p1-p2-p3^4-p4^4", not tz_shape,
        str(f) if tz_shape else "n is not of the shape 2*p1*p2*p3^4*p4^4")

    known = n in KNOWN_SOLUTIONS
    notes = [DISCLAIMER]
    if known:
        notes.append("known solution, conditions not required")
    return ConditionReport("literature", n, str(f), tuple(checks), tuple(notes), known)


@dataclass(frozen=True, order=True)
class ChainWitness:
    """p -> q_1 -> ... -> q_k -> p_prime with p, p_prime || n and q_i^2 || n."""

    p: int
    chain: tuple[int, ...]
    p_prime: int

    def __str__(self) -> str:
        return " -> ".join(map(str, (self.p, *self.chain, self.p_prime)))


def chain_witnesses(f, first_edge_exponent: int = 2, max_k: int | None = 3) -> list[ChainWitness]:
    """All chain certificates with 1 <= k <= max_k (None for no bound).

    The first link uses sigma(p^2) when ``first_edge_exponent`` is 2, or
    sigma(p), the arc of G(n), when it is 1.  Later links use sigma(q_i^2).
    """
    if first_edge_exponent not in (1, 2):
        raise ValueError("first_edge_exponent must be 1 or 2")
    f = _fact(f)
    L = sorted(l_set(f))
    twos = {p for p, e in f if e == 2}
    if not L or not twos:
        return []
    step = {q: [r for r, _ in factorize(sigma_pp(q, 2))] for q in twos}
    limit = len(twos) if max_k is None else max_k
    found: list[ChainWitness] = []
    Lset = set(L)

    def extend(p, chain):
        last = chain[-1]
        for r in step[last]:
            if r in Lset:
                found.append(ChainWitness(p, tuple(chain), r))
        if len(chain) < limit:
            for r in step[last]:
                if r in twos and r not in chain:
                    extend(p, chain + [r])

    for p in L:
        for q, _ in factorize(sigma_pp(p, first_edge_exponent)):
            if q in twos:
                extend(p, [q])
    return sorted(set(found))


def theorem12_report(f, first_edge_exponent: int = 2, path_cap: int = 10**5) -> ConditionReport:
    """Items i)-iii) for L = l_set(n) and its closure in G(n)."""
    f = _fact(f)
    n = f.value
    semantics = f"first link uses sigma(p^{first_edge_exponent})"
    if n == 1:
        return ConditionReport("theorem12", 1, "1", (), (DISCLAIMER, "n = 1 has no graph"), True, semantics)
    g = build(f)
    L = l_set(f)
    parts = closure_parts(g, L)
    M, B = parts.M, parts.B
    checks: list[Check] = []

    # i) B -> q_k -> ... -> q_1 -> p with q_i in M, p in L
    offending = None
    count = 0
    capped = False

    def back(chain, seen):
        # chain = [p, q_1, ..., q_k]
        nonlocal offending, count, capped
        if offending is not None or capped:
            return
        head = chain[-1]
        for u, _ in g.graph.predecessors(head):
            if u in B:
                count += 1
                if count > path_cap:
                    capped = True
                    return
                qs = chain[1:]
                k = len(qs)
                if k > 3 or any(q % 3 != 1 for q in qs[:-1]):
                    offending = [u] + list(reversed(chain))
                    return
            elif u in M and u not in seen:
                back(chain + [u], seen | {u})

    for p in sorted(L):
        back([p], {p})
    if offending is not None:
        checks.append(Check("closure-i", VIOLATED, offending, "path B -> M... -> L too long or interior prime not 1 mod 3"))
    elif capped:
        checks.append(Check("closure-i", NOT_APPLICABLE, f"more than {path_cap} paths; not evaluated"))
    else:
        checks.append(Check("closure-i", HOLDS, f"{count} paths from B to L via M checked"))

    one_mod_3 = sorted(q for q in M if q % 3 == 1)
    checks.append(Check("closure-ii-one-mod-3", HOLDS if len(one_mod_3) <= 2 else VIOLATED, one_mod_3))
    if len(L) in (1, 2):
        cap = 6 if len(L) == 1 else 8
        checks.append(Check("closure-ii-size", HOLDS if len(M) <= cap else VIOLATED,
                            {"#L": len(L), "#M": len(M), "max": cap}))
    else:
        checks.append(Check("closure-ii-size", NOT_APPLICABLE, {"#L": len(L), "#M": len(M)},
                            "bound stated only for #L in {1, 2}"))

    chains = chain_witnesses(f, first_edge_exponent, None)
    direct = sorted((p, q) for p in L for q, _ in factorize(sigma_pp(p, first_edge_exponent)) if q in L)
    checks.append(Check("closure-iii", HOLDS if chains else VIOLATED,
                        str(chains[0]) if chains else "no L-to-L path through exponent-2 primes"))
    checks.append(Check("closure-iii-allow-direct", HOLDS if (chains or direct) else VIOLATED,
                        str(chains[0]) if chains else (list(direct[0]) if direct else "no L-to-L path or arc"),
                        "empty interior (direct L -> L link) also accepted"))
    notes = (DISCLAIMER, f"L = {sorted(L)}, N = {sorted(parts.N)}, M = {sorted(M)}, B = {sorted(B)}")
    return ConditionReport("theorem12", n, str(f), tuple(checks), notes, n in KNOWN_SOLUTIONS, semantics)


def luca_loglog_bound(K: int, Lc: int, T: int) -> float:
    """log of log of the bound exp(((K + log Lc) T!)^(2^T)); finite for all T <= 20."""
    _check_luca(K, Lc, T)
    return 2**T * math.log((K + math.log(Lc)) * math.factorial(T))


def luca_log_bound(K: int, Lc: int, T: int) -> float:
    """((K + log Lc) * T!)^(2^T), the log of the bound on n.

    Floating point, display only.  Returns ``inf`` when the value exceeds
    the float range; use :func:`luca_loglog_bound` then.
    """
    _check_luca(K, Lc, T)
    base = (K + math.log(Lc)) * math.factorial(T)
    try:
        return math.pow(base, 2**T)
    except OverflowError:
        return math.inf


def _check_luca(K, Lc, T):
    if min(K, Lc, T) < 1:
        raise ValueError("K, Lc and T must be positive integers")
    if T > 20:
        raise ValueError("T must be at most 20")
