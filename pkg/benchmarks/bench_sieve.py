"""Compare the compiled and numpy sieve kernels.

    python benchmarks/bench_sieve.py --limit 10^7 --repeat 3

Each run is a full single-worker solution search up to the limit; the
best wall time of ``--repeat`` runs is reported together with throughput.
"""
import argparse
import time

from sigmarad import sieve
from sigmarad.cli import parse_int
from sigmarad.search import SearchConfig, solution_search


def bench(backend: str, limit: int, block: int, repeat: int) -> tuple[float, list[int]]:
    best = float("inf")
    found: list[int] = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        found = solution_search(SearchConfig(limit, block), backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, found


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=parse_int, default=10**7)
    ap.add_argument("--block", type=parse_int, default=1 << 20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = ["numpy"] + (["cython"] if sieve.BACKEND == "cython" else [])
    if len(names) == 1:
        print("compiled kernel not built; timing the numpy fallback only")
    rows = []
    for name in names:
        t, found = bench(name, args.limit, args.block, args.repeat)
        rows.append((name, t, found))
    base = rows[0][1]
    print(f"limit {args.limit:,}, block {args.block:,}, best of {args.repeat}")
    print(f"{'backend':<8} {'seconds':>9} {'Mn/s':>8} {'speedup':>8}  solutions")
    for name, t, found in rows:
        print(f"{name:<8} {t:9.3f} {args.limit / t / 1e6:8.1f} {base / t:8.2f}x  {found}")
    if len({tuple(f) for _, _, f in rows}) != 1:
        raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()
