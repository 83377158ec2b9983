import random
from fractions import Fraction
from pathlib import Path

import pytest

from sigmarad import build, closure_parts, kappa_lambda, l_set, lemma40_check
from sigmarad.arith import factorize
from sigmarad.synthetic import cycle_instance, degree_law_instance, precondition_instance

GOLDEN = Path(__file__).parent / "golden"


def test_g1782_arcs():
    g = build(1782)
    assert dict(g.graph.arcs) == {(2, 3): 1, (3, 11): 2, (11, 2): 2, (11, 3): 1}


def test_g1782_dot_golden():
    assert build(1782).to_dot() == (GOLDEN / "g1782.dot").read_text()


def test_sigma_only_primes_are_dashed():
    text = build(2).to_dot()
    assert '"3" [style=dashed]' in text or '"3" [label="3", style=dashed]' in text


def test_build_rejects_one():
    with pytest.raises(ValueError):
        build(1)


def test_l_set():
    assert l_set(1782) == {11}
    assert l_set(2 * 3 * 5**2 * 7) == {3, 7}


def test_closure_parts_example():
    # n = 2 * 3 * 13^2 * 61: sigma(13^2) = 3 * 61, so 13 joins N
    g = build(2 * 3 * 13**2 * 61)
    parts = closure_parts(g, {3, 61})
    assert parts.N == {3, 13, 61}
    assert parts.M == {13}
    assert parts.B == {2}
    assert set(parts.C.arcs) == {(2, 3), (13, 3), (13, 61)}


def test_closure_unknown_vertex():
    with pytest.raises(KeyError):
        closure_parts(build(12), {5})


def test_kappa_lambda_rational():
    g = build(2 * 3 * 13**2 * 61)
    kl = kappa_lambda(g, closure_parts(g, {3, 61}))
    assert kl.kappa[13] == 1
    assert kl.lam[13] == Fraction(169, 183)
    assert kl.kappa[2] == 1


def test_identity_breaks_without_degree_law():
    r = lemma40_check(build(2 * 3 * 13**2 * 61), {3, 61})
    assert r.preconditions_hold
    assert not r.degree_law_holds
    assert r.lhs == 3 and r.rhs == 30927
    assert r.identity_holds is False
    assert r.corrected_identity_holds is True
    assert r.bound_holds is False


def test_identity_at_1782():
    r = lemma40_check(build(1782), {11})
    assert r.identity_holds and r.degree_law_holds
    assert r.lhs == r.rhs == 121
    assert r.h_closure == Fraction(4, 3)
    assert r.bound_squared == 1 and r.bound_holds


def test_cycle_precondition():
    r = lemma40_check(build(2 * 3**2 * 13**2 * 61**2 * 97), {97})
    assert not r.preconditions_hold
    assert r.cycle == (3, 13, 3)
    assert r.lhs is None and r.identity_holds is None
    assert "cyclic" in r.summary()


def test_non_sink_precondition():
    # sigma(5) = 6, so 5 -> 3 inside N({3, 5})
    r = lemma40_check(build(2 * 3 * 5), {3, 5})
    assert r.non_sinks == (5,)
    assert not r.preconditions_hold


def test_missing_precondition():
    r = lemma40_check(build(12), {5})
    assert r.missing == (5,)


@pytest.mark.parametrize("seed", range(20))
def test_degree_law_instances(seed):
    inst = degree_law_instance(random.Random(seed))
    r = inst.report
    assert r.preconditions_hold and r.degree_law_holds
    assert r.identity_holds
    assert r.L == l_set(inst.factorization)


@pytest.mark.parametrize("seed", range(20))
def test_corrected_identity_always_holds(seed):
    r = precondition_instance(random.Random(seed)).report
    assert r.corrected_identity_holds
    assert r.identity_holds == r.degree_law_holds


@pytest.mark.parametrize("seed", range(10))
def test_cycle_instances_report_witness(seed):
    inst = cycle_instance(random.Random(seed))
    r = inst.report
    assert not r.preconditions_hold
    cyc = r.cycle
    assert cyc[0] == cyc[-1] and set(cyc) <= {3, 13, 61}
    for u, v in zip(cyc, cyc[1:]):
        assert inst.graph.graph.multiplicity(u, v) > 0


def test_sigma_factorization_helper():
    g = build(1782)
    assert g.sigma_factorization(3) == factorize(121)
    assert g.exponent(7) == 0
