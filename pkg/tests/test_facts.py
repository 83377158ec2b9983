import random
from fractions import Fraction

import pytest

from sigmarad import facts
from sigmarad.arith import DETERMINISTIC_LIMIT
from sigmarad.facts import Claim, FactsReport, LedgerError, claim_catalog, evaluate, verify_all, verify_claim


@pytest.fixture(scope="module")
def results():
    return {r.id: r for r in verify_all()}


def test_catalog_size_and_ids():
    cat = claim_catalog()
    ids = [c.id for c in cat]
    assert len(cat) >= 28
    assert len(set(ids)) == len(ids)
    assert "L4.2-prime-22406023" in ids
    assert all(c.source for c in cat)


def test_hinequality_sets_are_distinct_prime_powers():
    for c in claim_catalog():
        if c.kind == "HInequality":
            evaluate(c.payload["lhs"])    # raises on repeated or non-prime bases


def test_required_examples(results):
    r = results["L4.2-sigma-2801sq"]
    assert r.verdict == "verified"
    assert "7848403" in r.computed and "37 * 43 * 4933" in r.computed
    r = results["L5.3-II5-sigma-331p4"]
    assert r.verdict == "corrected"
    assert "12039987305 = 5 * 37861 * 63601" in r.computed
    assert results["L4.2-h-7deg4-chain"].verdict == "verified"
    assert results["L4.2-prime-22406023"].verdict == "verified"


# Frozen oracle values (independent factorization).
@pytest.mark.parametrize("cid, verdict, text", [
    ("L4.2-sigma-43sq", "corrected", "1893 = 3 * 631"),
    ("L5.1-B5-sigma-2801p4", "corrected", "5 * 1956611 * 6294091"),
    ("L5.3-IA2-sigma-917087137sq", "corrected", "3 * 43 * 4447 * 38047 * 38533987"),
    ("L5.3-II5-div-62601-sigma-331p4", "corrected", "does not divide"),
    ("L5.1-B6d-sigma-3500201sq", "verified", "13 * 139 * 28411 * 238639"),
    ("L5.1-B5d-sigma-195611sq", "verified", "211"),
    ("L5.3-IA-sigma-31p6", "verified", "917087137"),
])
def test_frozen_verdicts(results, cid, verdict, text):
    assert results[cid].verdict == verdict
    assert text in results[cid].computed


def test_no_refuted(results):
    assert not [r for r in results.values() if r.verdict == "refuted"]


def test_corrected_results_carry_truth(results):
    for r in results.values():
        if r.verdict == "corrected":
            assert "corrected claim holds" in r.note


def test_order_independent_and_idempotent():
    cat = claim_catalog()
    shuffled = cat[:]
    random.Random(3).shuffle(shuffled)
    assert verify_all(shuffled) == verify_all(cat) == verify_all()


def test_all_referenced_integers_below_2_64():
    def walk(x):
        if isinstance(x, int) and not isinstance(x, bool):
            yield x
        elif isinstance(x, list):
            for y in x:
                yield from walk(y)
        elif isinstance(x, dict):
            for y in x.values():
                yield from walk(y)
    for c in claim_catalog():
        assert all(v < DETERMINISTIC_LIMIT for v in walk(c.payload)), c.id


def test_refuted_when_no_correction():
    c = Claim("x", "Congruence", {"n": 13, "mod": 4, "residue": 3}, "test")
    r = verify_claim(c)
    assert r.verdict == "refuted" and "13 = 1 (mod 4)" in r.computed


def test_typo_with_false_correction_is_refuted():
    c = Claim("x", "Divisibility", {"d": 7, "of": 20}, "test", known_typo=True,
              correction={"d": 3, "of": 20})
    assert verify_claim(c).verdict == "refuted"


def test_evaluate_forms():
    assert evaluate({"sigma": [[2, 1], [3, 4], [11, 1]]}) == 4356
    assert evaluate({"geom": [195611, 2]}) == 1 + 195611 + 195611**2
    assert evaluate({"h": [[2, 1], [3, 2]]}) == Fraction(13, 12)
    assert evaluate({"mul": [2, {"frac": [1, 4]}]}) == Fraction(1, 2)
    assert evaluate({"pow": [{"add": [1, 2]}, 3]}) == 27
    with pytest.raises(LedgerError):
        evaluate({"nope": 1})
    with pytest.raises(LedgerError):
        evaluate({"h": [[4, 1]]})


def test_malformed_claims():
    with pytest.raises(LedgerError):
        Claim.from_dict({"id": "a", "kind": "Magic", "payload": {}, "source": "s"})
    with pytest.raises(LedgerError):
        Claim.from_dict({"id": "a", "kind": "Equality", "payload": {}, "source": "s", "extra": 1})


def test_report_round_trip():
    rep = facts.report()
    text = rep.to_json()
    assert FactsReport.from_json(text).to_json() == text
    assert rep.ok
