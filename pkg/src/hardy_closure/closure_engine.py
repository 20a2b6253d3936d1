"""Closed / dense / mixed classification and the closure of an ideal.

An ideal ``I = g * J`` (``g`` the gcd of the generators, ``J`` of finite
colength) has as associated primes the irreducible curves of ``g`` and the
points of ``V(J)``.  The closure keeps exactly the components whose zero set
meets the open bidisc; it is ``G_r * J_r`` where ``G_r`` is the retained part
of ``g`` (with multiplicities) and ``J_r`` the part of ``J`` supported on the
interior points.  Components are judged over C: a curve factor irreducible
over Q(i) can split into conjugate pieces, only some of which meet the bidisc.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from .hardy_oracle import (
    DensityDiagnostic,
    density_diagnostic,
    kernel_lower_bound,
)
from .ideal_engine import Decomposition, Ideal, decompose, radical, retained_zero_dimensional
from .poly_core.algorithms import exact_divide
from .poly_core.poly import DomainError, Poly
from .variety_geometry import (
    MAX_CURVE_DEGREE,
    DiscStatus,
    SearchConfig,
    VarietyComponent,
    WITNESS_FOUND,
    absolute_factor_count,
    disc_witness,
    eval_array,
    exact_subproduct,
    reconstruct_factor,
)

CLOSED = "CLOSED"
DENSE = "DENSE"
MIXED = "MIXED"
CONFLICT = "CONFLICT"
DEFAULT_DEGREES = tuple(range(2, 17, 2))
DEFAULT_KS = (2, 4, 8, 16, 32)


@dataclass
class ClosureReport:
    ideal: Ideal
    verdict: str
    closure: Ideal
    components: List[VarietyComponent]
    numeric_evidence: Dict[str, DensityDiagnostic] = field(default_factory=dict)
    caveats: List[str] = field(default_factory=list)
    residual_flag: bool = True
    resolution: dict = field(default_factory=dict)
    decomposition: Optional[Decomposition] = None
    discarded_curve: Optional[Poly] = None


def _fmt(z: complex) -> str:
    z = complex(z) + 0.0  # drop signed zeros
    re, im = z.real + 0.0, z.imag + 0.0
    return f"{re:.12g}" if im == 0 else f"{re:.12g}{im:+.12g}i"


def _inside(point, exact=None) -> bool:
    if exact is not None:
        return all(c.re * c.re + c.im * c.im < 1 for c in exact)
    return all(abs(c) < 1 for c in point)


def _vertical_status(a: complex, cfg: SearchConfig) -> DiscStatus:
    if abs(a) <= 1 - cfg.margin:
        return DiscStatus(WITNESS_FOUND, (complex(a), 0j), (1 - abs(a), 1.0), 0.0,
                          {"margin": cfg.margin})
    return DiscStatus("EXHAUSTED", resolution={"margin": cfg.margin, "univariate": True})


def _curve_components(f: Poly, mult: int, cfg: SearchConfig):
    """Absolute components of one square-free factor, each with its disc status."""
    if max(f.degree_in(0), f.degree_in(1)) > MAX_CURVE_DEGREE:
        notes = [f"degree of {f} exceeds {MAX_CURVE_DEGREE}; monodromy skipped, treated as one component"]
        comp = VarietyComponent("curve", f, mult, disc_status=disc_witness(f, cfg),
                                description=str(f), caveats=list(notes))
        return [comp], notes
    fact = absolute_factor_count(f, cfg)
    notes = list(fact.diagnostics)
    if fact.count == 1 or not fact.certified:
        if not fact.certified:
            notes.append(f"monodromy for {f} uncertified; treated as one component")
        comp = VarietyComponent("curve", f, mult, disc_status=disc_witness(f, cfg),
                                description=str(f), sheet_group=None)
        if fact.count == 1 and fact.certified:
            comp.sheet_group = tuple(fact.sheet_groups[0]) if fact.sheet_groups else None
        comp.caveats = notes
        return [comp], notes
    comps = []
    for a in fact.vertical_roots:
        arr = np.array([[-a], [1.0]], dtype=complex)
        comps.append(VarietyComponent("curve", f, mult, disc_status=_vertical_status(a, cfg),
                                      numeric_factor=arr, description=f"z1 = {_fmt(a)}"))
    for grp in fact.sheet_groups:
        h = reconstruct_factor(fact, grp, cfg)
        if h is None:
            notes.append(f"could not reconstruct a component of {f}; treated as one component")
            comp = VarietyComponent("curve", f, mult, disc_status=disc_witness(f, cfg),
                                    description=str(f), caveats=list(notes))
            return [comp], notes
        comps.append(VarietyComponent("curve", f, mult, disc_status=disc_witness(h, cfg),
                                      sheet_group=tuple(grp), numeric_factor=h,
                                      description=f"component of {f} (sheets {list(grp)})"))
    return comps, notes


def _on_component(comp: VarietyComponent, pc) -> bool:
    if comp.numeric_factor is None:
        if pc.exact_point is not None:
            return comp.factor.evaluate(pc.exact_point).is_zero()
        val, err = comp.factor.evaluate_float(pc.point)
        return abs(val) <= max(1e-8 * (1 + comp.factor.max_coefficient_magnitude()), 4 * err)
    h = comp.numeric_factor
    scale = 1 + float(np.max(np.abs(h)))
    return abs(eval_array(h, pc.point[0], pc.point[1])) <= 1e-7 * scale


def classify(I: Ideal, cfg: SearchConfig = SearchConfig(), evidence: bool = True,
             degrees: Sequence[int] = DEFAULT_DEGREES, ks: Sequence[int] = DEFAULT_KS,
             workers: int = 1) -> ClosureReport:
    gens = [g for g in I.generators if not g.is_zero()]
    resolution = {"radius_steps": cfg.radius_steps, "angle_steps": cfg.angle_steps,
                  "margin": cfg.margin}
    if not gens:
        return ClosureReport(I, CLOSED, I, [], caveats=["zero ideal"], resolution=resolution)
    if I.is_unit():
        # V(I) is empty; the unit ideal is its own closure.
        return ClosureReport(I, CLOSED, Ideal.unit(), [], caveats=["unit ideal: no components"],
                             resolution=resolution)
    dec = decompose(I)
    caveats = list(dec.diagnostics)
    if not dec.residual_flag:
        caveats.append("point clustering not certified")

    if workers > 1 and len(dec.curve_factors) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda fk: _curve_components(fk[0], fk[1], cfg), dec.curve_factors))
    else:
        results = [_curve_components(f, k, cfg) for f, k in dec.curve_factors]
    curve_groups = []
    for (f, k), (comps, notes) in zip(dec.curve_factors, results):
        for c in comps:
            c.retained = c.disc_status.found
        curve_groups.append((f, k, comps))
        caveats.extend(notes)

    point_comps = []
    for pc in dec.point_components:
        inside = _inside(pc.point, pc.exact_point)
        if pc.exact_point is None and min(1 - abs(c) for c in pc.point) < 1e-9:
            caveats.append(f"point {pc.point} within 1e-9 of the torus boundary")
        w = tuple(complex(c) for c in pc.point)
        status = DiscStatus(WITNESS_FOUND if inside else "EXHAUSTED", w if inside else None,
                            (1 - abs(w[0]), 1 - abs(w[1])) if inside else None, pc.residual)
        comp = VarietyComponent("point", None, pc.multiplicity, point=w, disc_status=status,
                                retained=inside,
                                description=f"point ({_fmt(w[0])}, {_fmt(w[1])})")
        point_comps.append((pc, comp))
        if inside:
            # an interior point on a curve component puts that component inside the bidisc
            for f, k, comps in curve_groups:
                for c in comps:
                    if not c.retained and _on_component(c, pc):
                        c.retained = True
                        c.disc_status = DiscStatus(WITNESS_FOUND, w, (1 - abs(w[0]), 1 - abs(w[1])),
                                                   pc.residual, {"from_point_component": True})

    g_kept = Poly.one()
    g_dropped = Poly.one()
    for f, k, comps in curve_groups:
        kept = [c for c in comps if c.retained]
        if len(kept) == len(comps):
            g_kept = g_kept * f ** k
        elif not kept:
            g_dropped = g_dropped * f
        else:
            part = exact_subproduct(f, [c.numeric_factor for c in kept])
            if part is None:
                # the verdict stays geometric; only the closure is conservative
                caveats.append(f"retained part of {f} is not defined over Q(i); closure keeps all of {f}")
                for c in comps:
                    if not c.retained:
                        c.caveats.append("kept in the closure conservatively")
                g_kept = g_kept * f ** k
            else:
                g_kept = g_kept * part ** k
                g_dropped = g_dropped * exact_divide(f, part)

    if dec.zero_dim is None:
        j_kept = Ideal.unit()
    else:
        keep = [(pc.part, pc.root_index) for pc, comp in point_comps if comp.retained]
        j_kept = retained_zero_dimensional(dec.zero_dim, keep)
        if j_kept is None:
            caveats.append("retained points are not defined over Q(i) as a set; closure keeps all points")
            for _, comp in point_comps:
                if not comp.retained:
                    comp.caveats.append("kept in the closure conservatively")
            j_kept = dec.residual_ideal
    closure = Ideal([g_kept * p for p in j_kept.groebner()]).reduced()

    components = [c for _, _, comps in curve_groups for c in comps] + [c for _, c in point_comps]
    flags = [bool(c.retained) for c in components]
    if all(flags):
        verdict = CLOSED
    elif not any(flags):
        verdict = DENSE
    else:
        verdict = MIXED
    report = ClosureReport(I, verdict, closure, components, {}, caveats, dec.residual_flag,
                           resolution, dec, None if g_dropped.is_constant() else g_dropped)
    if evidence:
        attach_evidence(report, degrees, ks)
    return report


def retained_witnesses(report: ClosureReport):
    return [c.disc_status.witness for c in report.components
            if c.retained and c.disc_status is not None and c.disc_status.witness is not None]


def attach_evidence(report: ClosureReport, degrees: Sequence[int] = DEFAULT_DEGREES,
                    ks: Sequence[int] = DEFAULT_KS) -> None:
    gens = [g for g in report.ideal.generators if not g.is_zero()]
    witnesses = retained_witnesses(report)
    principal = len(gens) == 1 and report.verdict == DENSE
    report.numeric_evidence["ideal"] = density_diagnostic(
        gens, degrees, ks if principal else (), witnesses)
    if report.discarded_curve is not None:
        report.numeric_evidence["discarded"] = density_diagnostic(report.discarded_curve, degrees, ks)


def closure(I: Ideal, cfg: SearchConfig = SearchConfig()) -> Ideal:
    return classify(I, cfg, evidence=False).closure


def _require_closed(I: Ideal, cfg: SearchConfig) -> ClosureReport:
    rep = classify(I, cfg, evidence=False)
    if rep.verdict != CLOSED:
        raise DomainError(f"ideal is {rep.verdict}, not CLOSED")
    return rep


def radical_closed_invariant(I: Ideal, cfg: SearchConfig = SearchConfig()) -> bool:
    """The radical of a closed ideal must again be closed."""
    _require_closed(I, cfg)
    return classify(radical(I), cfg, evidence=False).verdict == CLOSED


def associated_primes(I: Ideal) -> List[tuple]:
    """(label, Ideal or None, point) for each associated prime; curve primes grouped by factor."""
    dec = decompose(I)
    out = []
    for f, _ in dec.curve_factors:
        out.append((str(f), Ideal([f]), None))
    for pc in dec.point_components:
        if pc.exact_point is not None:
            a, b = pc.exact_point
            m = Ideal([Poly.var(0) - Poly.constant(a), Poly.var(1) - Poly.constant(b)])
        else:
            m = None
        out.append((f"point ({_fmt(pc.point[0])}, {_fmt(pc.point[1])})", m, pc.point))
    return out


def associated_primes_closed(I: Ideal, cfg: SearchConfig = SearchConfig()) -> List[tuple]:
    """Verdict for every associated prime of a closed ideal: (label, verdict)."""
    _require_closed(I, cfg)
    out = []
    for label, prime, point in associated_primes(I):
        if prime is not None:
            out.append((label, classify(prime, cfg, evidence=False).verdict))
        else:
            # irrational point: the maximal ideal is closed iff the point is interior
            out.append((label, CLOSED if _inside(point) else DENSE))
    return out


@dataclass
class ValidationRecord:
    status: str
    verdict: str
    checks: List[dict]
    errors: List[str] = field(default_factory=list)

    @property
    def conflict(self) -> bool:
        return self.status == CONFLICT


def _decreasing(values: Sequence[float], floor: float = 1e-8) -> bool:
    for a, b in zip(values, values[1:]):
        if a < floor and b < floor:
            continue
        if not a - b > 1e-12:
            return False
    return True


def cross_validate(report: ClosureReport, degrees: Sequence[int] = DEFAULT_DEGREES,
                   k_list: Sequence[int] = DEFAULT_KS) -> ValidationRecord:
    """Compare the symbolic verdict with Hardy-space numerics; the verdict is never changed."""
    ev = report.numeric_evidence.get("ideal")
    if ev is None or list(ev.degrees) != list(degrees):
        attach_evidence(report, degrees, k_list)
        ev = report.numeric_evidence["ideal"]
    checks = []
    errors = list(ev.errors)
    if report.verdict == DENSE:
        ok = _decreasing(ev.distances)
        checks.append({"check": "distance profile strictly decreasing", "ok": ok,
                       "distances": list(ev.distances)})
        fk_source = ev if ev.fk_norms else report.numeric_evidence.get("discarded")
        if fk_source is not None and fk_source.fk_norms:
            errors.extend(e for e in fk_source.errors if e not in errors)
            checks.append({"check": "f_k norms decreasing", "ok": _decreasing(fk_source.fk_norms),
                           "fk_norms": list(fk_source.fk_norms)})
            checks.append({"check": "f_k sup within bound",
                           "ok": max(fk_source.fk_sups) <= fk_source.sup_bound + 1e-6,
                           "sup": max(fk_source.fk_sups), "bound": fk_source.sup_bound})
    else:
        floor = ev.floor if ev.floor is not None else 0.0
        ok = floor >= ev.kernel_bound - 1e-6
        checks.append({"check": "distance floor above kernel bound", "ok": ok,
                       "floor": floor, "kernel_bound": ev.kernel_bound})
    status = "OK" if all(c["ok"] for c in checks) else CONFLICT
    return ValidationRecord(status, report.verdict, checks, errors)
