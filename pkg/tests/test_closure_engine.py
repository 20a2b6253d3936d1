import pytest

from hardy_closure.acceptance import CORPUS
from hardy_closure.closure_engine import (
    CLOSED,
    CONFLICT,
    DENSE,
    MIXED,
    associated_primes,
    associated_primes_closed,
    classify,
    closure,
    cross_validate,
    radical_closed_invariant,
)
from hardy_closure.ideal_engine import Ideal, radical
from hardy_closure.poly_core import parse_poly as P
from hardy_closure.poly_core.poly import DomainError, Poly

Q = Ideal.parse


def verdict(text):
    return classify(Q(text), evidence=False)


@pytest.mark.parametrize("text, expected", [
    ("z1*z2 - 1", DENSE),
    ("z1 + z2 - 2", DENSE),
    ("2*z1*z2 + z1 + z2 + 2", DENSE),
    ("z1 - 2; z2", DENSE),
    ("z1 - 1; z2", DENSE),
    ("z1 - z2", CLOSED),
    ("z1 - 1/2; z2", CLOSED),
    ("z1*z2 - 1/4", CLOSED),
    ("(z1*z2 - 1)*(z1 - 1/2)", MIXED),
    ("(z1 - 2)*(z2 - 1/2*z1)", MIXED),
    ("(z1 - 2)*z1; z2", MIXED),
    ("1", CLOSED),
])
def test_verdicts(text, expected):
    assert verdict(text).verdict == expected


def test_mixed_closures():
    assert verdict("(z1*z2 - 1)*(z1 - 1/2)").closure == Q("z1 - 1/2")
    assert verdict("(z1 - 2)*(z2 - 1/2*z1)").closure == Q("z1 - 2*z2")
    assert verdict("(z1 - 2)*z1; z2").closure == Q("z1; z2")
    assert verdict("(z1 - 2)^2*(z1 - 1/3)^3").closure == Q("(z1 - 1/3)^3")


def test_dense_closure_is_unit():
    for text in ("z1*z2 - 1", "z1 - 2; z2"):
        assert verdict(text).closure.is_unit()


def test_zero_ideal_rejected():
    with pytest.raises(DomainError):
        Q("0")


def test_unit_ideal_has_no_components():
    r = verdict("1")
    assert r.components == [] and r.closure.is_unit()


def test_split_factor_over_c_is_conservative():
    """z1^2 + 2 z1 - 1 has roots -1 +- sqrt 2; only one is inside, and it is irrational."""
    r = verdict("z1^2 + 2*z1 - 1")
    assert r.verdict == MIXED
    assert r.closure == r.ideal.reduced()
    assert any("not defined over Q(i)" in c for c in r.caveats)
    assert sorted(c.retained for c in r.components) == [False, True]


def test_interior_point_on_exterior_curve():
    """The point (1/2, 2) is exterior; (1/2, 1/2) on z2 - z1 is interior."""
    r = verdict("z2 - z1; z1 - 1/2")
    assert r.verdict == CLOSED
    r = verdict("z2 - 4*z1; z1 - 1/2")
    assert r.verdict == DENSE


@pytest.mark.parametrize("text", [
    "(z1*z2 - 1)*(z1 - 1/2)", "(z1 - 2)*(z2 - 1/2*z1)", "z1 - z2", "(z1 - 2)*z1; z2", "z1 + z2 - 2",
])
def test_closure_idempotent_and_contains(text):
    I = Q(text)
    c = closure(I)
    assert c.contains_ideal(I)
    assert closure(c) == c
    assert classify(c, evidence=False).verdict == CLOSED


CLOSED_CORPUS = [t for t in CORPUS if verdict(t).verdict == CLOSED]


def test_corpus_has_enough_closed_ideals():
    assert len(CLOSED_CORPUS) >= 15


@pytest.mark.parametrize("text", CLOSED_CORPUS)
def test_closed_ideal_invariants(text):
    I = Q(text)
    assert radical_closed_invariant(I)
    assert all(v == CLOSED for _, v in associated_primes_closed(I))


def test_invariants_refuse_non_closed():
    with pytest.raises(DomainError):
        radical_closed_invariant(Q("z1*z2 - 1"))


def test_associated_primes_examples():
    primes = associated_primes(Q("(z1 - 1/2)*(z1*z2 - 1)"))
    assert sorted(label for label, _, _ in primes) == sorted([str(P("z1 - 1/2")), str(P("z1*z2 - 1"))])
    primes = associated_primes(Q("z1^2; z2"))
    assert len(primes) == 1 and primes[0][1] == Q("z1; z2")
    primes = associated_primes(Q("z1^2 - 1/2; z2"))
    assert len(primes) == 2 and all(m is None for _, m, _ in primes)
    assert radical(Q("z1^2; z2")) == Q("z1; z2")


def test_irrational_corpus_point_judged_numerically():
    verdicts = associated_primes_closed(Q("z1^2 + z2^2 - 1/2; z1*z2"))
    assert len(verdicts) == 4 and all(v == CLOSED for _, v in verdicts)


@pytest.mark.parametrize("text", ["z1 + z2 - 2", "z1 - z2", "(z1*z2 - 1)*(z1 - 1/2)", "z1 - 1/2; z2"])
def test_cross_validation_agrees(text):
    rep = classify(Q(text), degrees=(2, 4, 6, 8), ks=(2, 4, 8))
    rec = cross_validate(rep, (2, 4, 6, 8), (2, 4, 8))
    assert rec.status == "OK" and not rec.conflict
    assert rep.verdict == rec.verdict


def test_cross_validation_reports_injected_conflict():
    rep = classify(Q("z1 + z2 - 2"), degrees=(2, 4, 6, 8), ks=(2, 4))
    rep.numeric_evidence["ideal"].distances = [0.5, 0.4, 0.4, 0.4]
    rec = cross_validate(rep, (2, 4, 6, 8), (2, 4))
    assert rec.status == CONFLICT and rep.verdict == DENSE


def test_closed_report_evidence_floor():
    rep = classify(Q("z1 - 1/2"), degrees=(2, 4, 8), ks=())
    ev = rep.numeric_evidence["ideal"]
    assert ev.floor >= ev.kernel_bound - 1e-6
    assert abs(ev.kernel_bound - 3 ** 0.5 / 2) < 1e-3


def test_mixed_report_carries_discarded_evidence():
    rep = classify(Q("(z1*z2 - 1)*(z1 - 1/2)"), degrees=(2, 4, 6), ks=(2, 4))
    assert rep.discarded_curve == P("z1*z2 - 1") or rep.discarded_curve == -P("z1*z2 - 1")
    d = rep.numeric_evidence["discarded"].distances
    assert d[0] > d[1] > d[2]


def test_workers_do_not_change_result():
    I = Q("(z1 - 2)*(z2 - 1/2*z1)*(z1*z2 - 1)")
    a = classify(I, evidence=False, workers=1)
    b = classify(I, evidence=False, workers=3)
    assert a.verdict == b.verdict == MIXED and a.closure == b.closure


def test_high_degree_curve_kept_as_one_component():
    r = verdict("z1^31 - z2 - 1/2")
    assert r.verdict == CLOSED and len(r.components) == 1
    assert any("monodromy skipped" in c for c in r.caveats)
