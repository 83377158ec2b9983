"""Directed multigraphs with arc multiplicities and the source path-sum identity.

Parallel arcs are a single ``(tail, head) -> multiplicity`` record.  Graphs
are immutable once constructed; all queries are pure.
"""
from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

__all__ = [
    "Multigraph",
    "Path",
    "CycleError",
    "PathLimitExceeded",
    "PATH_LIMIT",
    "random_acyclic_multigraph",
]

PATH_LIMIT = 10**5


class CycleError(ValueError):
    """Raised when an operation needs an acyclic graph; carries a witness."""

    def __init__(self, cycle: tuple):
        self.cycle = cycle
        super().__init__("graph has a cycle: " + " -> ".join(map(str, cycle)))


class PathLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    """A path ``vertices[0] -> ... -> vertices[-1]``.

    ``copies[i]`` selects which of the parallel arcs joins ``vertices[i]`` to
    ``vertices[i + 1]``, so parallel arcs give distinct paths.
    """

    vertices: tuple
    copies: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.vertices) - 1


def _sort_key(v):
    return (type(v).__name__, v)


class Multigraph:
    def __init__(self, vertices: Iterable[Hashable] = (), arcs=()):
        """``arcs`` is a mapping ``(u, v) -> k`` or an iterable of ``(u, v)`` or
        ``(u, v, k)`` tuples; repeated entries add up."""
        verts = set(vertices)
        acc: dict[tuple, int] = {}
        items = arcs.items() if isinstance(arcs, Mapping) else arcs
        for item in items:
            if isinstance(arcs, Mapping):
                (u, v), k = item
            elif len(item) == 2:
                (u, v), k = item, 1
            else:
                u, v, k = item
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if k < 1:
                raise ValueError(f"arc {u!r}->{v!r} has multiplicity {k}")
            if u not in verts or v not in verts:
                raise ValueError(f"arc {u!r}->{v!r} has an endpoint outside the vertex set")
            acc[(u, v)] = acc.get((u, v), 0) + k
        self._vertices = tuple(sorted(verts, key=_sort_key))
        self._vset = frozenset(verts)
        self._arcs = dict(sorted(acc.items(), key=lambda kv: (_sort_key(kv[0][0]), _sort_key(kv[0][1]))))
        self._succ: dict = {v: [] for v in self._vertices}
        self._pred: dict = {v: [] for v in self._vertices}
        for (u, v), k in self._arcs.items():
            self._succ[u].append((v, k))
            self._pred[v].append((u, k))
        self._indeg = {v: sum(k for _, k in self._pred[v]) for v in self._vertices}
        self._outdeg = {v: sum(k for _, k in self._succ[v]) for v in self._vertices}

    # -- basic structure -------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def arcs(self) -> Mapping[tuple, int]:
        return MappingProxyType(self._arcs)

    def __contains__(self, v) -> bool:
        return v in self._vset

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vset == other._vset and self._arcs == other._arcs

    def __hash__(self):
        return hash((self._vset, frozenset(self._arcs.items())))

    def __repr__(self) -> str:
        arcs = ", ".join(f"{u}->{v}" + (f"x{k}" if k > 1 else "") for (u, v), k in self._arcs.items())
        return f"Multigraph(vertices={list(self._vertices)}, arcs=[{arcs}])"

    def _check(self, v):
        if v not in self._vset:
            raise KeyError(f"unknown vertex {v!r}")

    def multiplicity(self, u, v) -> int:
        return self._arcs.get((u, v), 0)

    def successors(self, v) -> list[tuple]:
        self._check(v)
        return list(self._succ[v])

    def predecessors(self, v) -> list[tuple]:
        self._check(v)
        return list(self._pred[v])

    def degrees(self, v) -> tuple[int, int]:
        """(out-degree, in-degree) counted with multiplicity."""
        self._check(v)
        return self._outdeg[v], self._indeg[v]

    def in_degree(self, v) -> int:
        self._check(v)
        return self._indeg[v]

    def out_degree(self, v) -> int:
        self._check(v)
        return self._outdeg[v]

    @property
    def total_multiplicity(self) -> int:
        return sum(self._arcs.values())

    def sources_sinks(self) -> tuple[frozenset, frozenset]:
        sources = frozenset(v for v in self._vertices if self._indeg[v] == 0)
        sinks = frozenset(v for v in self._vertices if self._outdeg[v] == 0)
        return sources, sinks

    @property
    def sources(self) -> frozenset:
        return self.sources_sinks()[0]

    @property
    def sinks(self) -> frozenset:
        return self.sources_sinks()[1]

    # -- cycles and ordering ---------------------------------------------
    def find_cycle(self) -> tuple | None:
        """A directed cycle as ``(v1, ..., vk, v1)``, or None if acyclic.

        Depth-first search from the smallest unvisited vertex, exploring
        successors in ascending order, so the witness is deterministic.
        """
        WHITE, GREY, BLACK = 0, 1, 2
        colour = {v: WHITE for v in self._vertices}
        for root in self._vertices:
            if colour[root] != WHITE:
                continue
            stack = [(root, iter(self._succ[root]))]
            trail = [root]
            colour[root] = GREY
            while stack:
                v, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    colour[v] = BLACK
                    stack.pop()
                    trail.pop()
                    continue
                w = nxt[0]
                if colour[w] == GREY:
                    i = trail.index(w)
                    return tuple(trail[i:]) + (w,)
                if colour[w] == WHITE:
                    colour[w] = GREY
                    trail.append(w)
                    stack.append((w, iter(self._succ[w])))
        return None

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def topological_order(self) -> tuple:
        """Kahn's algorithm with ties broken by ascending label."""
        indeg = {v: len(self._pred[v]) for v in self._vertices}
        heap = [(_sort_key(v), v) for v in self._vertices if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, v = heapq.heappop(heap)
            order.append(v)
            for w, _k in self._succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, (_sort_key(w), w))
        if len(order) != len(self._vertices):
            raise CycleError(self.find_cycle())
        return tuple(order)

    # -- derived graphs --------------------------------------------------
    def spanned_subgraph(self, S: Iterable) -> "Multigraph":
        S = set(S)
        unknown = S - self._vset
        if unknown:
            raise KeyError(f"unknown vertices {sorted(unknown, key=_sort_key)!r}")
        arcs = {(u, v): k for (u, v), k in self._arcs.items() if u in S and v in S}
        return Multigraph(S, arcs)

    def without_arcs_into(self, v) -> "Multigraph":
        self._check(v)
        arcs = {(a, b): k for (a, b), k in self._arcs.items() if b != v}
        return Multigraph(self._vertices, arcs)

    def reverse_reachable(self, targets: Iterable, allowed=None) -> set:
        """Vertices with a path into ``targets``; intermediate and starting
        vertices must satisfy ``allowed`` (targets themselves always count)."""
        seen = set(targets)
        queue = deque(sorted(seen, key=_sort_key))
        while queue:
            v = queue.popleft()
            for u, _k in self._pred[v]:
                if u not in seen and (allowed is None or allowed(u)):
                    seen.add(u)
                    queue.append(u)
        return seen

    # -- path sums -------------------------------------------------------
    def count_source_paths(self, v0) -> int:
        """Number of source paths ending at ``v0``, parallel arcs counted."""
        self._check(v0)
        order = self.topological_order()
        count = {}
        for v in order:
            if self._indeg[v] == 0:
                count[v] = 1
            else:
                count[v] = sum(k * count[u] for u, k in self._pred[v])
        return count[v0]

    def enumerate_source_paths(self, v0, limit: int = PATH_LIMIT) -> list[Path]:
        """All paths from a source to ``v0``, one per choice of parallel arcs."""
        self._check(v0)
        self.topological_order()  # raises CycleError
        total = self.count_source_paths(v0)
        if total > limit:
            raise PathLimitExceeded(f"{total} source paths into {v0!r} exceed limit {limit}")
        paths: list[Path] = []

        def walk(v, rev_vertices, rev_copies):
            if self._indeg[v] == 0:
                paths.append(Path(tuple(reversed(rev_vertices)), tuple(reversed(rev_copies))))
                return
            for u, k in self._pred[v]:
                for c in range(k):
                    walk(u, rev_vertices + [u], rev_copies + [c])

        walk(v0, [v0], [])
        return paths

    def path_sum_enumerated(self, v0, limit: int = PATH_LIMIT) -> Fraction:
        """Sum over source paths of 1 / prod of in-degrees of all non-source
        vertices on the path."""
        total = Fraction(0)
        for path in self.enumerate_source_paths(v0, limit):
            denom = 1
            for v in path.vertices[1:]:
                denom *= self._indeg[v]
            total += Fraction(1, denom)
        return total

    def path_weights(self) -> dict:
        """Per-vertex weight: 1 on sources, otherwise the in-arc average
        (with multiplicity) of predecessor weights."""
        weights: dict = {}
        for v in self.topological_order():
            d = self._indeg[v]
            if d == 0:
                weights[v] = Fraction(1)
            else:
                weights[v] = sum((k * weights[u] for u, k in self._pred[v]), Fraction(0)) / d
        return weights

    def path_sum_recurrence(self, v0) -> Fraction:
        self._check(v0)
        return self.path_weights()[v0]

    def path_sum(self, v0, limit: int = PATH_LIMIT) -> Fraction:
        """The source path sum into ``v0``.

        Uses the recurrence; when the path count is at most ``limit`` the
        enumeration is also evaluated and must agree exactly.
        """
        self._check(v0)
        if self._indeg[v0] == 0:
            raise ValueError(f"{v0!r} is a source")
        value = self.path_sum_recurrence(v0)
        if self.count_source_paths(v0) <= limit:
            check = self.path_sum_enumerated(v0, limit)
            if check != value:
                raise AssertionError(f"path sum evaluators disagree at {v0!r}: {value} != {check}")
        return value

    # -- export ------------------------------------------------------------
    def to_dot(self, name: str = "G", labels: Mapping | None = None,
               dashed: Iterable = ()) -> str:
        """DOT text; one line per arc copy, so parallel arcs repeat."""
        dashed = set(dashed)
        lines = [f"digraph {name} {{"]
        for v in self._vertices:
            attrs = []
            if labels is not None and v in labels:
                attrs.append(f'label="{labels[v]}"')
            if v in dashed:
                attrs.append("style=dashed")
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f'  "{v}"{suffix};')
        for (u, v), k in self._arcs.items():
            for _ in range(k):
                lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def random_acyclic_multigraph(rng: random.Random, max_vertices: int = 12,
                              max_multiplicity: int = 3,
                              density: float | None = None) -> Multigraph:
    """A random DAG on 2..max_vertices integer vertices.

    Arcs only go from lower to higher positions of a random permutation, so
    the result is acyclic, and every non-source is reachable from a source.
    """
    n = rng.randint(2, max_vertices)
    order = list(range(n))
    rng.shuffle(order)
    p = density if density is not None else rng.uniform(0.15, 0.6)
    arcs = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                arcs[(order[i], order[j])] = rng.randint(1, max_multiplicity)
    return Multigraph(range(n), arcs)
