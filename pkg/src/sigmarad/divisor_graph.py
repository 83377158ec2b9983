"""The prime-power multigraph G(n) and its 2-incomponent / 2-closure operators.

Vertices of G(n) are the primes dividing n*sigma(n).  For every p^e || n there
is an arc p -> q of multiplicity k whenever q^k || sigma(p^e).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .arith import Factorization, factorize, h_set, sigma_pp
from .multigraph import Multigraph

__all__ = [
    "DivisorGraph",
    "ClosureParts",
    "KappaLambda",
    "Lemma40Report",
    "build",
    "l_set",
    "closure_parts",
    "kappa_lambda",
    "lemma40_check",
]


@dataclass(frozen=True)
class DivisorGraph:
    graph: Multigraph
    exponents: Mapping[int, int]
    factorization: Factorization

    def exponent(self, p: int) -> int:
        """Exponent of p in n; 0 for primes dividing only sigma(n)."""
        return self.exponents.get(p, 0)

    @property
    def n(self) -> int:
        return self.factorization.value

    def sigma_factorization(self, p: int) -> Factorization:
        return factorize(sigma_pp(p, self.exponents[p]))

    def to_dot(self, name: str = "G") -> str:
        """DOT export labelled ``p^e`` for p^e || n; sigma-only primes dashed."""
        labels = {p: (f"{p}^{self.exponents[p]}" if p in self.exponents else str(p))
                  for p in self.graph.vertices}
        dashed = [p for p in self.graph.vertices if p not in self.exponents]
        return self.graph.to_dot(name, labels=labels, dashed=dashed)


def build(f: Factorization | int) -> DivisorGraph:
    if not isinstance(f, Factorization):
        f = factorize(f)
    if not f.parts:
        raise ValueError("G(n) is defined for n >= 2")
    vertices = set(f.primes)
    arcs = {}
    for p, e in f:
        for q, k in factorize(sigma_pp(p, e)):
            vertices.add(q)
            arcs[(p, q)] = k
    exps = MappingProxyType(dict(f.parts))
    return DivisorGraph(Multigraph(vertices, arcs), exps, f)


def l_set(f: Factorization | int) -> frozenset[int]:
    """Odd primes dividing n exactly once."""
    if not isinstance(f, Factorization):
        f = factorize(f)
    return frozenset(p for p, e in f if p != 2 and e == 1)


@dataclass(frozen=True)
class ClosureParts:
    S: frozenset
    N: frozenset
    B: frozenset
    M: frozenset
    C: Multigraph

    @property
    def closure_vertices(self) -> frozenset:
        return self.N | self.B


def closure_parts(g: DivisorGraph, S: Iterable[int]) -> ClosureParts:
    """2-incomponent N(S), 2-boundary B(S), M(S) = N(S) minus S, and 2-closure C(S).

    N(S) is found by reverse traversal from S through vertices whose exponent
    in n is exactly 2.  C(S) keeps the arcs inside N(S) and the arcs from
    B(S) into N(S).
    """
    S = frozenset(S)
    unknown = S - set(g.graph.vertices)
    if unknown:
        raise KeyError(f"unknown vertices {sorted(unknown)}")
    N = frozenset(g.graph.reverse_reachable(S, allowed=lambda v: g.exponent(v) == 2))
    B = frozenset(u for (u, v) in g.graph.arcs if v in N and u not in N)
    arcs = {(u, v): k for (u, v), k in g.graph.arcs.items()
            if v in N and (u in N or u in B)}
    C = Multigraph(N | B, arcs)
    return ClosureParts(S, N, B, N - S, C)


@dataclass(frozen=True)
class KappaLambda:
    """sigma(p^e) = kappa[p] * prod_{q in N} q^k[p, q] for p in C, and
    p^2 = lam[p] * prod_{q in N} q^k[p, q] for p in M (lam is rational)."""

    kappa: Mapping[int, int]
    lam: Mapping[int, Fraction]
    k: Mapping[tuple[int, int], int]


def kappa_lambda(g: DivisorGraph, parts: ClosureParts) -> KappaLambda:
    kappa, lam, k = {}, {}, {}
    for p in sorted(parts.closure_vertices):
        e = g.exponent(p)
        if e == 0:
            raise ValueError(f"{p} lies in the closure but does not divide n")
        rest = sigma_pp(p, e)
        n_part = 1
        for q in sorted(parts.N):
            mult = g.graph.multiplicity(p, q)
            if mult:
                k[(p, q)] = mult
                n_part *= q**mult
                rest //= q**mult
        kappa[p] = rest
        if p in parts.M:
            lam[p] = Fraction(p * p, n_part)
    return KappaLambda(MappingProxyType(kappa), MappingProxyType(lam), MappingProxyType(k))


@dataclass(frozen=True)
class Lemma40Report:
    L: frozenset
    parts: ClosureParts
    cycle: tuple | None
    non_sinks: tuple[int, ...]
    missing: tuple[int, ...]
    in_degrees: Mapping[int, int] = field(default_factory=dict)
    kl: KappaLambda | None = None
    lhs: int | None = None
    rhs: Fraction | None = None
    defect: Fraction | None = None
    h_closure: Fraction | None = None
    bound_squared: Fraction | None = None

    @property
    def acyclic(self) -> bool:
        return self.cycle is None

    @property
    def preconditions_hold(self) -> bool:
        """N(L) acyclic, every vertex of L a sink of N(L), and L divides n."""
        return self.acyclic and not self.non_sinks and not self.missing

    @property
    def degree_law_holds(self) -> bool:
        """Every vertex of N has in-degree exactly 2 (forced by sigma(n) = rad(n)^2)."""
        return all(d == 2 for d in self.in_degrees.values())

    @property
    def identity_holds(self) -> bool | None:
        if self.lhs is None:
            return None
        return self.lhs == self.rhs

    @property
    def corrected_identity_holds(self) -> bool | None:
        """lhs == rhs * prod_{q in N} q^(d(q) - 2); true whenever the
        preconditions hold, solution or not."""
        if self.lhs is None:
            return None
        return self.lhs == self.rhs * self.defect

    @property
    def bound_holds(self) -> bool | None:
        """h(C) strictly exceeds the lower bound (compared after squaring)."""
        if self.h_closure is None:
            return None
        return self.h_closure**2 > self.bound_squared

    def summary(self) -> str:
        if self.missing:
            return f"precondition failed: L vertices {list(self.missing)} do not divide n"
        if self.cycle is not None:
            return "precondition failed: N cyclic, witness " + " -> ".join(map(str, self.cycle))
        if self.non_sinks:
            return f"precondition failed: L vertices {list(self.non_sinks)} are not sinks of N"
        if not self.L:
            return "L is empty; the identity is vacuous (1 = 1)"
        if self.identity_holds:
            return "identity holds"
        return "identity fails (in-degree law broken); corrected identity " + (
            "holds" if self.corrected_identity_holds else "FAILS")


def lemma40_check(g: DivisorGraph, L: Iterable[int]) -> Lemma40Report:
    """Evaluate the closure product identity and the h(C) lower bound for L.

    Preconditions are evaluated, not assumed.  When they hold, reports

    * lhs = prod_B sigma(p^e) and rhs = prod_B kappa * prod_M lam * prod_L p^2,
    * defect = prod_{q in N} q^(d(q) - 2) with d the in-degree in G(n), so that
      lhs == rhs * defect always; lhs == rhs iff the in-degree law holds,
    * h(C) and the squared lower bound
      prod_B kappa p^(e-4) * prod_M sigma(p^2)/p^2 * prod_L p^(2(e-1)).
    """
    L = frozenset(L)
    missing = tuple(sorted(p for p in L if g.exponent(p) == 0 or p not in g.graph))
    known = L & set(g.graph.vertices)
    parts = closure_parts(g, known)
    n_graph = g.graph.spanned_subgraph(parts.N)
    cycle = n_graph.find_cycle()
    non_sinks = tuple(sorted(p for p in known if n_graph.out_degree(p) > 0))
    in_degrees = {q: g.graph.in_degree(q) for q in sorted(parts.N)}
    report = Lemma40Report(L, parts, cycle, non_sinks, missing, in_degrees)
    if not report.preconditions_hold:
        return report

    kl = kappa_lambda(g, parts)
    lhs = 1
    rhs = Fraction(1)
    for p in parts.B:
        lhs *= sigma_pp(p, g.exponent(p))
        rhs *= kl.kappa[p]
    for p in parts.M:
        rhs *= kl.lam[p]
    for p in L:
        rhs *= p * p
    defect = Fraction(1)
    for q, d in in_degrees.items():
        defect *= Fraction(q) ** (d - 2)

    h_closure = h_set((p, g.exponent(p)) for p in parts.closure_vertices)
    bound = Fraction(1)
    for p in parts.B:
        bound *= kl.kappa[p] * Fraction(p) ** (g.exponent(p) - 4)
    for p in parts.M:
        bound *= Fraction(sigma_pp(p, 2), p * p)
    for p in L:
        bound *= Fraction(p) ** (2 * (g.exponent(p) - 1))

    return Lemma40Report(L, parts, cycle, non_sinks, missing, in_degrees,
                         kl, lhs, rhs, defect, h_closure, bound)
