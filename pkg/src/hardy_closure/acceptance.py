"""Acceptance criteria as callable checks; shared by the ``suite`` command and the tests."""

from __future__ import annotations

import io
import math
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np

from .bergman_domains import (
    ReinhardtDomain,
    ball_density_series,
    beta,
    beta_quadrature,
    lemma41_partial,
    reinhardt_density_series,
)
from .closure_engine import (
    CLOSED,
    DENSE,
    MIXED,
    associated_primes_closed,
    classify,
    radical_closed_invariant,
)
from .finite_codim import codimension, correspondence_check, stabilization_degree, truncate
from .hardy_oracle import (
    density_distance,
    fk_norm,
    h2_norm,
    kernel_lower_bound,
    product_bound_check,
    quotient_ratio,
    torus_norm,
)
from .ideal_engine import Ideal, decompose, intersect
from .poly_core.gaussian import GaussianRational
from .poly_core.parse import parse_poly
from .poly_core.poly import Poly

ZERO_FREE_POLYS = ("z1*z2 - 1", "z1 + z2 - 2", "2*z1*z2 + z1 + z2 + 2")
EVEN_DEGREES = tuple(range(2, 17, 2))
K_LIST = (2, 4, 8, 16, 32)

CORPUS = (
    "z1 - 1/2; z2",
    "z1^2; z2",
    "(z1 - 1/2)^2",
    "z1*z2",
    "(z1 - 1/2)*(z2 - 1/3)",
    "z1^2 - 1/2*z1; z1*z2 - 1/2*z2 - 1/2*z1 + 1/4; z2^2 - 1/2*z2",
    "z1^2 - z1*z2; z2^2 - 1/4*z2",
    "z1 - z2",
    "z1^2 - z2^3",
    "z1^2 - z2^2",
    "z1*z2 - 1/4",
    "z1 + z2",
    "z1^2 + z2^2 - 1/2; z1*z2",
    "z1^3; z2^2",
    "z1^2 - 1/4; z2^2 - 1/9",
    "z1*(z1 - 1/3); z1*z2",
    "(z1 - 1/2*i)*(z2 + 1/3)",
    "(z1 + z2 - 1)^2",
    "z2^2 - z1",
    "(z1 - 1/2)*(z1*z2 - 1)",
    "z1*z2 - 1",
    "z1 - 2; z2",
    "(z1 - 2)*z1; z2",
    "z1^2 + 2*z1 - 1",
)

FINITE_CODIM = (
    "z1; z2",
    "z1^2; z2",
    None,  # (z1 - 1/2, z2 - 1/3) ∩ (z1, z2), built below
    "z1^2 - z1*z2; z2^2 - 1/4*z2",
    "z1^3; z2^2",
    "z1^2 - 1/4; z2^2 - 1/9",
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.name} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, fn: Callable[[], tuple]) -> CriterionResult:
    t0 = time.perf_counter()
    passed, details, notes = fn()
    return CriterionResult(number, name, bool(passed), time.perf_counter() - t0, details, notes)


def zero_free_density():
    details, ok = {}, True
    t0 = time.perf_counter()
    for text in ZERO_FREE_POLYS:
        p = parse_poly(text)
        verdict = classify(Ideal([p]), evidence=False).verdict
        dists = [density_distance(p, d).distance for d in EVEN_DEGREES]
        fks = [fk_norm(p, k) for k in K_LIST]
        norms = [f.norm for f in fks]
        sup = max(f.sup for f in fks)
        bound = 2.0 ** p.degree_in(0)
        steps_ok = all(a - b >= 1e-6 for a, b in zip(dists, dists[1:]))
        fk_ok = all(a > b for a, b in zip(norms, norms[1:]))
        this = verdict == DENSE and steps_ok and fk_ok and sup <= bound + 1e-6
        ok &= this
        details[text] = {"verdict": verdict, "distances": dists, "fk_norms": norms,
                         "sup": sup, "sup_bound": bound, "ok": this}
    elapsed = time.perf_counter() - t0
    details["seconds"] = elapsed
    return ok and elapsed <= 30.0, details, []


def closed_floor():
    p = parse_poly("z1 - 1/2")
    dist = density_distance(p, 16).distance
    kb = kernel_lower_bound([(0.5, 0.0)])
    ok = math.sqrt(3) / 2 - 1e-3 <= dist <= 1 and dist >= kb - 1e-6
    return ok, {"distance_16": dist, "kernel_bound": kb}, []


def mixed_closure():
    rep = classify(Ideal.parse("(z1*z2 - 1)*(z1 - 1/2)"), evidence=False)
    target = Ideal.parse("z1 - 1/2")
    again = classify(rep.closure, evidence=False)
    ok = rep.verdict == MIXED and rep.closure == target and again.verdict == CLOSED
    return ok, {"verdict": rep.verdict, "closure": rep.closure.strings(),
                "closure_verdict": again.verdict}, []


def primes_and_radical(corpus=CORPUS):
    notes = []
    if not corpus:
        notes.append("empty corpus: criterion passes vacuously")
        return True, {"ideals": 0}, notes
    if len(corpus) < 20:
        notes.append(f"corpus has {len(corpus)} ideals (fewer than 20)")
    violations, closed = [], 0
    for text in corpus:
        I = Ideal.parse(text)
        if classify(I, evidence=False).verdict != CLOSED:
            continue
        closed += 1
        primes = associated_primes_closed(I)
        if any(v != CLOSED for _, v in primes):
            violations.append({"ideal": text, "primes": primes})
        if not radical_closed_invariant(I):
            violations.append({"ideal": text, "radical": "not closed"})
    ok = not violations and (len(corpus) >= 20 or bool(notes))
    return ok, {"ideals": len(corpus), "closed": closed, "violations": violations}, notes


def quotient_bounds(samples: int = 10_000, polys: int = 1_000, seed: int = 7):
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(1, 4, samples) * np.exp(2j * np.pi * rng.uniform(size=samples))
    alpha[: samples // 10] /= np.abs(alpha[: samples // 10])  # include |alpha| = 1
    r = rng.uniform(0.5, 1, samples)
    r = np.where(r <= 0.5, 0.75, r)
    z = np.exp(2j * np.pi * rng.uniform(size=samples))
    ratios = np.abs(z - alpha) / np.abs(r * z - alpha)
    single_bad = int(np.sum(ratios > 2))
    poly_bad, worst = 0, 0.0
    for _ in range(polys):
        n = int(rng.integers(1, 7))
        roots = rng.uniform(1, 3, n) * np.exp(2j * np.pi * rng.uniform(size=n))
        rr = float(rng.uniform(0.5, 1))
        if rr <= 0.5:
            rr = 0.75
        m = product_bound_check(roots, rr, 512)
        worst = max(worst, m / 2 ** n)
        poly_bad += m > 2 ** n
    ok = single_bad == 0 and poly_bad == 0 and quotient_ratio(1, 0.75, -1) == 8 / 7
    return ok, {"single_violations": single_bad, "max_single_ratio": float(ratios.max()),
                "poly_violations": poly_bad, "max_ratio_over_bound": worst}, []


def _finite_codim_ideals():
    out = []
    for text in FINITE_CODIM:
        if text is None:
            out.append(("(z1-1/2, z2-1/3) ∩ (z1, z2)",
                        intersect(Ideal.parse("z1 - 1/2; z2 - 1/3"), Ideal.parse("z1; z2"))))
        else:
            out.append((text, Ideal.parse(text)))
    return out


def finite_codimension():
    details, ok = {}, True
    for label, I in _finite_codim_ideals():
        codim = codimension(I)
        local = sum(pc.multiplicity for pc in decompose(I).point_components)
        stab = stabilization_degree(I)
        profile = [truncate(I, d).codim for d in range(stab, stab + 4)]
        rec = correspondence_check(I, stab + 2)
        this = (codim == local and all(c == codim for c in profile) and rec.codim_matches
                and rec.intersection_matches and rec.max_angle < 1e-8 and rec.minimal)
        ok &= this
        details[label] = {"codimension": codim, "local_multiplicities": local,
                          "stabilization_degree": stab, "codim_profile": profile,
                          "max_angle": rec.max_angle, "enlargements": rec.enlargements, "ok": this}
    return ok, details, []


BOUNDARY_POINTS = (
    ((2, 2), (1.0, 0.0)),
    ((2, 2), (math.sqrt(0.5), math.sqrt(0.5))),
    ((2, 4), (1.0, 0.0)),
    ((2, 4), (0.0, 1.0)),
    ((2, 4), (math.sqrt(0.5), 0.5 ** 0.25)),
    ((1, 3), (0.5, 0.5 ** (1 / 3))),
)


def _interior(p, q, share, margin=0.05):
    level = 1 - margin
    return ((level * share) ** (1 / p), (level * (1 - share)) ** (1 / q))


def series_checks(terms: int = 10_000):
    details, ok = {}, True
    exact = {str(a): lemma41_partial(a, 40) == 41 for a in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1))}
    ok &= all(exact.values())
    worst = 0.0
    for m in range(1, 7):
        for n in range(1, 7):
            ref = math.factorial(2 * m - 1) * math.factorial(2 * n - 1) / math.factorial(2 * m + 2 * n - 1)
            worst = max(worst, abs(beta(2 * m, 2 * n) - ref) / ref)
    ok &= worst <= 1e-12
    boundary = []
    for (p, q), w in BOUNDARY_POINTS:
        for variant in ("prop41_plus1", "lemma42_plus2"):
            d = reinhardt_density_series(ReinhardtDomain(p, q), w, terms, variant)
            boundary.append(((p, q), w, variant, d.classification))
            ok &= d.classification == "DIVERGING"
    interior = []
    for p, q in ((2, 2), (2, 4), (1, 1), (4, 4), (0.5, 2)):
        for share in (0.0, 0.5, 1.0):
            w = _interior(p, q, share)
            for variant in ("prop41_plus1", "lemma42_plus2"):
                d = reinhardt_density_series(ReinhardtDomain(p, q), w, terms, variant)
                good = d.classification == "CONVERGED" and d.tail_bound is not None and d.tail_bound < 1e-10
                interior.append(((p, q), w, variant, d.classification, d.tail_bound))
                ok &= good
    ball = []
    for w, expect in (((1.0, 0.0), "DIVERGING"), ((0.6, 0.8), "DIVERGING"), ((0.0, 1j), "DIVERGING"),
                      ((0.0, 0.0), "CONVERGED"), ((0.85, 0.0), "CONVERGED"), ((0.6, 0.6), "CONVERGED"),
                      ((0.5 + 0.3j, 0.5), "CONVERGED")):
        d = ball_density_series(w, terms)
        ball.append((w, d.classification))
        ok &= d.classification == expect
    details.update(exact_partials=exact, beta_factorial_max_rel=worst, boundary=boundary,
                   interior=interior, ball=ball)
    return ok, details, []


def _random_poly(rng, degree: int) -> Poly:
    terms = {}
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            if rng.uniform() < 0.6:
                re = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
                im = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
                terms[(a, b)] = GaussianRational(re, im)
    if not terms:
        terms[(0, 0)] = GaussianRational(1)
    return Poly(terms)


def oracle_agreement(polys: int = 50, seed: int = 11):
    rng = np.random.default_rng(seed)
    worst_norm = 0.0
    for _ in range(polys):
        p = _random_poly(rng, int(rng.integers(0, 11)))
        a, b = h2_norm(p), torus_norm(p)
        worst_norm = max(worst_norm, abs(a - b) / a)
    grid = np.linspace(0.25, 6.0, 10)
    worst_beta = 0.0
    for r in grid:
        for s in grid:
            a, b = beta(r, s), beta_quadrature(r, s)
            worst_beta = max(worst_beta, abs(a - b) / b)
    ok = worst_norm <= 1e-10 and worst_beta <= 1e-8
    return ok, {"norm_max_rel": worst_norm, "beta_max_rel": worst_beta}, []


def determinism():
    from .cli import run

    commands = (
        ["classify", "--ideal", "(z1*z2-1)*(z1-1/2)", "--threads", "2"],
        ["density", "--poly", "z1*z2-1", "--degrees", "2:8:2"],
        ["reinhardt", "--p", "2", "--q", "4", "--point", "1,0", "--terms", "2000"],
        ["codim", "--ideal", "z1^2; z2"],
    )
    same = []
    for argv in commands:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            run(list(argv), stdout=buf, stderr=io.StringIO())
            outs.append(buf.getvalue())
        same.append(outs[0] == outs[1] and bool(outs[0]))
    return all(same), {"commands": [" ".join(c) for c in commands], "identical": same}, []


CRITERIA = (
    (1, "zero-free curves are dense", zero_free_density),
    (2, "closed-ideal distance floor", closed_floor),
    (3, "mixed closure and idempotence", mixed_closure),
    (4, "associated primes and radical of closed ideals", primes_and_radical),
    (5, "quotient bounds", quotient_bounds),
    (6, "finite codimension correspondence", finite_codimension),
    (7, "density series", series_checks),
    (8, "oracle agreement", oracle_agreement),
)


def load_corpus(path: str) -> List[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip() and not line.lstrip().startswith("#")]


def run_criteria(profile: str = "quick", corpus: Optional[List[str]] = None) -> List[CriterionResult]:
    if profile not in ("quick", "full"):
        raise ValueError("profile must be quick or full")
    scale = 4 if profile == "full" else 1
    t0 = time.perf_counter()
    results = []
    for number, name, fn in CRITERIA:
        if number == 4:
            call = lambda: primes_and_radical(CORPUS if corpus is None else corpus)
        elif number == 5:
            call = lambda: quotient_bounds(10_000 * scale, 1_000 * scale)
        elif number == 8:
            call = lambda: oracle_agreement(50 * scale)
        else:
            call = fn
        results.append(_timed(number, name, call))
    res9 = _timed(9, "wall clock and deterministic output", determinism)
    total = time.perf_counter() - t0
    limit = 300.0 if profile == "full" else 180.0
    res9.details.update(total_seconds=total, limit_seconds=limit)
    res9.passed = res9.passed and total <= limit
    results.append(res9)
    for r in results:
        for note in r.warnings:
            warnings.warn(f"criterion {r.number}: {note}")
    return results


def run_suite(profile: str = "quick", corpus: Optional[List[str]] = None) -> dict:
    results = run_criteria(profile, corpus)
    return {
        "profile": profile,
        "passed": all(r.passed for r in results),
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                      "seconds": round(r.seconds, 3), "warnings": r.warnings} for r in results],
    }
