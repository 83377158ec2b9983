import numpy as np
import pytest

from sigmarad import sieve
from sigmarad.arith import divisor_sum_bruteforce, factorize, radical, sigma
from sigmarad.search import (
    MAX_LIMIT,
    MutualPair,
    SearchConfig,
    chain_step,
    default_workers,
    mutual_pair_search,
    solution_search,
)

BACKENDS = ["numpy"] + (["cython"] if sieve.BACKEND == "cython" else [])


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("lo, hi", [(1, 3000), (777, 5000), (10**6, 10**6 + 2000)])
def test_block_values_match_arith(name, lo, hi):
    primes = sieve.base_primes(hi)
    sig, rad = sieve.backend(name).block_sigma_radical(lo, hi, primes)
    for i, n in enumerate(range(lo, hi)):
        assert int(sig[i]) == sigma(n), n
        assert int(rad[i]) == radical(n), n


def test_backends_agree_on_a_large_block():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    lo, hi = 10**9, 10**9 + 50_000
    primes = sieve.base_primes(hi)
    a = sieve.backend("numpy").block_sigma_radical(lo, hi, primes)
    b = sieve.backend("cython").block_sigma_radical(lo, hi, primes)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_empty_block():
    for name in BACKENDS:
        assert sieve.backend(name).block_hits(5, 5, sieve.base_primes(5)) == []


def test_unknown_backend():
    with pytest.raises(ValueError):
        sieve.backend("fortran")


@pytest.mark.parametrize("name", BACKENDS)
def test_search_small(name):
    assert solution_search(SearchConfig(2000, block_size=97), backend=name) == [1, 1782]
    assert solution_search(SearchConfig(1), backend=name) == [1]
    assert solution_search(SearchConfig(1781), backend=name) == [1]


def test_search_matches_brute_force_to_20000():
    expect = [n for n in range(1, 20001) if divisor_sum_bruteforce(n) == radical(n) ** 2]
    assert solution_search(SearchConfig(20000, block_size=4096)) == expect == [1, 1782]


def test_search_multiworker_is_deterministic():
    cfg = SearchConfig(300_000, block_size=50_000, worker_count=2)
    assert solution_search(cfg) == solution_search(SearchConfig(300_000)) == [1, 1782]


def test_progress_callback():
    seen = []
    solution_search(SearchConfig(10_000, block_size=2500), progress=lambda d, t: seen.append((d, t)))
    assert seen == [(1, 4), (2, 4), (3, 4), (4, 4)]


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(0)
    with pytest.raises(ValueError):
        SearchConfig(MAX_LIMIT + 1)
    with pytest.raises(ValueError):
        SearchConfig(10, worker_count=0)
    assert SearchConfig(10, block_size=4).blocks() == [(1, 5), (5, 9), (9, 11)]


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv("SIGMARAD_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("SIGMARAD_WORKERS", "0")
    with pytest.raises(ValueError):
        default_workers()
    monkeypatch.delenv("SIGMARAD_WORKERS")
    assert default_workers() == 1


def brute_pairs(bound):
    ps = [p for p in range(2, bound + 1) if factorize(p).parts == ((p, 1),)]
    return [(p, q) for i, p in enumerate(ps) for q in ps[i + 1:]
            if (q * q + q + 1) % p == 0 and (p * p + p + 1) % q == 0]


def test_mutual_pairs_against_brute_force():
    assert [tuple(x) for x in mutual_pair_search(400)] == brute_pairs(400)
    assert mutual_pair_search(100) == [MutualPair(3, 13), MutualPair(13, 61)]
    assert mutual_pair_search(13) == [MutualPair(3, 13)]
    assert mutual_pair_search(2) == []
    assert str(MutualPair(3, 13)) == "(3,13)"


def test_chain_step():
    assert chain_step(61) == factorize(3 * 13 * 97)
    with pytest.raises(ValueError):
        chain_step(15)
