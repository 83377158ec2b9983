"""Command line front end: ``sigmarad {analyze,search,pairs,facts,identity,luca}``.

Exit status: 0 when verdicts were computed, 1 on a usage error, 2 when an
internal invariant is breached (never expected).  ``facts`` also exits 1 when
a claim is refuted.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import secrets
import sys
import time
from fractions import Fraction

from . import __version__, facts, search, sieve
from .arith import factorize, h_int, radical, sigma
from .conditions import (
    KNOWN_SOLUTIONS,
    bkkl_classify,
    chain_witnesses,
    literature_conditions,
    luca_log_bound,
    luca_loglog_bound,
    theorem12_report,
)
from .divisor_graph import build, l_set, lemma40_check
from .multigraph import random_acyclic_multigraph

EXIT_USAGE = 1
EXIT_INVARIANT = 2


class UsageError(Exception):
    pass


class InvariantBreach(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_INT_FORMS = (
    (re.compile(r"^\d+$"), lambda m: int(m.group(0))),
    (re.compile(r"^(\d+)(?:\^|\*\*)(\d+)$"), lambda m: int(m.group(1)) ** int(m.group(2))),
    (re.compile(r"^(\d+)[eE](\d+)$"), lambda m: int(m.group(1)) * 10 ** int(m.group(2))),
)


def parse_int(text: str) -> int:
    """Decimal integer; also accepts 10^8, 10**8 and 1e8."""
    s = text.strip().replace("_", "")
    for rx, conv in _INT_FORMS:
        m = rx.match(s)
        if m:
            return conv(m)
    raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}" if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _show_h(x: Fraction) -> str:
    return f"{_frac(x)} ({float(x):.6g})"


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


# -- analyze --------------------------------------------------------------

def _analysis(n: int, chain_exponent: int) -> tuple[dict, object]:
    f = factorize(n)
    g = build(f)
    L = l_set(f)
    rep = lemma40_check(g, L)
    parts = rep.parts
    if rep.preconditions_hold and not rep.corrected_identity_holds:
        raise InvariantBreach(f"closure identity with in-degree defect fails for n = {n}")
    h = h_int(f)
    if (h == 1) != (sigma(f) == radical(f) ** 2):
        raise InvariantBreach("h(n) = 1 disagrees with sigma(n) = rad(n)^2")
    lem = {
        "summary": rep.summary(),
        "preconditions_hold": rep.preconditions_hold,
        "cycle": list(rep.cycle) if rep.cycle else None,
        "non_sinks": list(rep.non_sinks),
        "in_degrees": {str(q): d for q, d in rep.in_degrees.items()},
        "degree_law_holds": rep.degree_law_holds,
    }
    if rep.lhs is not None:
        lem.update({
            "lhs": str(rep.lhs),
            "rhs": _frac(rep.rhs),
            "defect": _frac(rep.defect),
            "identity_holds": rep.identity_holds,
            "corrected_identity_holds": rep.corrected_identity_holds,
            "kappa": {str(p): k for p, k in rep.kl.kappa.items()},
            "lambda": {str(p): _frac(x) for p, x in rep.kl.lam.items()},
            "h_closure": _frac(rep.h_closure),
            "bound_squared": _frac(rep.bound_squared),
            "bound_holds": rep.bound_holds,
        })
    form = bkkl_classify(f)
    doc = {
        "kind": "analyze",
        "n": str(n),
        "factorization": str(f),
        "sigma": str(sigma(f)),
        "radical": str(radical(f)),
        "h": _frac(h),
        "h_decimal": f"{float(h):.6g}",
        "known_solution": n in KNOWN_SOLUTIONS,
        "graph": {
            "vertices": list(g.graph.vertices),
            "arcs": [[u, v, k] for (u, v), k in g.graph.arcs.items()],
        },
        "closure": {
            "L": sorted(L),
            "N": sorted(parts.N),
            "B": sorted(parts.B),
            "M": sorted(parts.M),
            "C": [[u, v, k] for (u, v), k in parts.C.arcs.items()],
        },
        "lemma40": lem,
        "form": {"tag": form.tag, "p1": form.p1, "p2": form.p2, "note": form.note},
        "literature": literature_conditions(f).to_dict(),
        "theorem12": theorem12_report(f, chain_exponent).to_dict(),
        "chain_exponent": chain_exponent,
        "chains": [str(c) for c in chain_witnesses(f, chain_exponent, None)],
    }
    return doc, g


def _print_report(title: str, rep: dict) -> None:
    print(f"{title}:")
    for c in rep["checks"]:
        line = f"  {c['id']:<40} {c['verdict']:<15} {c['witness']}"
        print(line.rstrip())
    for note in rep["notes"]:
        print(f"  note: {note}")


def cmd_analyze(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("n must be a positive integer")
    if n == 1:
        if args.structured:
            _emit({"kind": "analyze", "n": "1", "factorization": "1", "h": "1",
                   "known_solution": True, "note": "n = 1 has no prime factors; sigma(1) = rad(1)^2 = 1"})
        else:
            print("n = 1: the trivial solution (sigma(1) = rad(1)^2 = 1); there is no graph to analyse.")
        return 0
    doc, g = _analysis(n, args.chain_exponent)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(g.to_dot())
    if args.structured:
        _emit(doc)
        return 0
    h = h_int(factorize(n))
    print(f"n = {n} = {doc['factorization']}")
    print(f"sigma(n) = {doc['sigma']}, rad(n) = {doc['radical']}")
    print(f"h(n) = {_show_h(h)}")
    if doc["known_solution"]:
        print("known solution of sigma(n) = rad(n)^2")
    elif h == 1:
        print("NEW SOLUTION of sigma(n) = rad(n)^2")
    print("G(n) arcs:")
    for u, v, k in doc["graph"]["arcs"]:
        print(f"  {u} -> {v}" + (f" x{k}" if k > 1 else ""))
    c = doc["closure"]
    print(f"L = {c['L']}  N = {c['N']}  B = {c['B']}  M = {c['M']}")
    lem = doc["lemma40"]
    print(f"closure check: {lem['summary']}")
    if "lhs" in lem:
        print(f"  prod_B sigma = {lem['lhs']}, prod_B kappa * prod_M lambda * prod_L p^2 = {lem['rhs']}")
        print(f"  in-degree defect = {lem['defect']}, h(C) = {lem['h_closure']}, "
              f"h(C)^2 > bound^2 = {lem['bound_squared']}: {lem['bound_holds']}")
    form = doc["form"]
    print(f"form: {form['tag']}" + (f" (p1 = {form['p1']}" + (f", p2 = {form['p2']}" if form["p2"] else "") + ")"
                                     if form["p1"] else "") + (f"; {form['note']}" if form["note"] else ""))
    _print_report("literature conditions", doc["literature"])
    _print_report(f"closure conditions ({doc['theorem12']['semantics']})", doc["theorem12"])
    if doc["chains"]:
        print(f"chain witnesses (first link sigma(p^{args.chain_exponent})):")
        for w in doc["chains"]:
            print(f"  {w}")
    else:
        print("chain witnesses: none")
    if args.dot:
        print(f"DOT written to {args.dot}")
    return 0


# -- search / pairs ---------------------------------------------------------

def cmd_search(args) -> int:
    try:
        cfg = search.SearchConfig(args.limit, args.block, args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t0 = time.perf_counter()
    found = search.solution_search(cfg, progress=search.stderr_progress if args.progress else None)
    dt = time.perf_counter() - t0
    if args.structured:
        _emit({"kind": "search", "limit": args.limit, "workers": args.workers, "block": args.block,
               "backend": sieve.BACKEND, "solutions": found, "seconds": round(dt, 3)})
    else:
        for n in found:
            print(n)
    print(f"searched n <= {args.limit} ({sieve.BACKEND} kernel, {args.workers} worker(s)): "
          f"{len(found)} solution(s) in {dt:.2f} s", file=sys.stderr)
    return 0


def cmd_pairs(args) -> int:
    if args.bound < 1:
        raise UsageError("bound must be positive")
    pairs = search.mutual_pair_search(args.bound)
    if args.structured:
        _emit({"kind": "pairs", "bound": args.bound, "pairs": [list(p) for p in pairs]})
    else:
        for p in pairs:
            print(p)
    return 0


# -- facts --------------------------------------------------------------------

def cmd_facts(args) -> int:
    rep = facts.report()
    if args.structured:
        sys.stdout.write(rep.to_json())
    else:
        for r in rep.results:
            print(f"{r.verdict:<10} {r.id:<46} {r.computed}")
            if r.verdict != facts.VERIFIED:
                print(f"{'':<10} note: {r.note}")
        counts = rep.counts()
        print(f"{len(rep.results)} claims: {counts['verified']} verified, "
              f"{counts['corrected']} corrected, {counts['refuted']} refuted")
    return 0 if rep.ok else 1


# -- identity -----------------------------------------------------------------

def cmd_identity(args) -> int:
    if args.graphs < 1 or args.max_vertices < 2:
        raise UsageError("need --graphs >= 1 and --max-vertices >= 2")
    seed = args.seed if args.seed is not None else secrets.randbelow(2**32)
    rng = random.Random(seed)
    good = 0
    failures = []
    for i in range(args.graphs):
        g = random_acyclic_multigraph(rng, args.max_vertices)
        bad = []
        for v in g.vertices:
            if g.in_degree(v) == 0:
                continue
            try:
                value = g.path_sum(v)
            except AssertionError as exc:
                raise InvariantBreach(str(exc)) from exc
            if value != 1:
                bad.append((v, value))
        if bad:
            failures.append({"graph": i, "vertices": [[v, _frac(x)] for v, x in bad]})
        else:
            good += 1
    if args.structured:
        _emit({"kind": "identity", "graphs": args.graphs, "max_vertices": args.max_vertices,
               "seed": seed, "holding": good, "failures": failures})
    else:
        print(f"{good}/{args.graphs} identities hold")
        print(f"seed {seed}")
    if failures:
        raise InvariantBreach(f"path-sum identity failed on {len(failures)} graph(s)")
    return 0


# -- luca ---------------------------------------------------------------------

def cmd_luca(args) -> int:
    try:
        log_b = luca_log_bound(args.k, args.l, args.t)
        loglog = luca_loglog_bound(args.k, args.l, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.structured:
        _emit({"kind": "luca", "K": args.k, "L": args.l, "T": args.t,
               "log_bound": repr(log_b), "loglog_bound": repr(loglog)})
    else:
        print(f"log n < {log_b:.6g}")
        print(f"log log n < {loglog:.6g}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sigmarad", description="Tools for sigma(n) = rad(n)^2.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="graph, closure and necessary conditions for one n")
    a.add_argument("n", type=parse_int)
    a.add_argument("--dot", metavar="PATH", help="write G(n) in DOT format")
    a.add_argument("--chain-exponent", type=int, choices=(1, 2), default=2,
                   help="exponent used for the first link of chain certificates (default 2)")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", help="all n <= LIMIT with sigma(n) = rad(n)^2")
    s.add_argument("--limit", type=parse_int, required=True)
    s.add_argument("--workers", type=parse_int, default=None,
                   help=f"worker processes (default ${search.WORKERS_ENV} or 1)")
    s.add_argument("--block", type=parse_int, default=1 << 20, help="sieve block size")
    s.add_argument("--progress", action="store_true", help="report blocks on standard error")
    s.set_defaults(func=cmd_search)

    q = sub.add_parser("pairs", help="mutual prime pairs p | sigma(q^2), q | sigma(p^2)")
    q.add_argument("--bound", type=parse_int, required=True)
    q.set_defaults(func=cmd_pairs)

    f = sub.add_parser("facts", help="re-verify the claim ledger")
    f.set_defaults(func=cmd_facts)

    i = sub.add_parser("identity", help="path-sum identity on random acyclic multigraphs")
    i.add_argument("--graphs", type=parse_int, default=1000)
    i.add_argument("--max-vertices", type=parse_int, default=12)
    i.add_argument("--seed", type=parse_int, default=None)
    i.set_defaults(func=cmd_identity)

    lu = sub.add_parser("luca", help="evaluate the explicit size bound")
    lu.add_argument("--k", type=parse_int, required=True)
    lu.add_argument("--l", type=parse_int, required=True)
    lu.add_argument("--t", type=parse_int, required=True)
    lu.set_defaults(func=cmd_luca)

    for sp in (a, s, q, f, i, lu):
        sp.add_argument("--structured", action="store_true", help="emit one JSON document")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 0) is None:
        try:
            args.workers = search.default_workers()
        except ValueError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except InvariantBreach as exc:
        print(f"internal invariant breached: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return 0


if __name__ == "__main__":
    sys.exit(main())
