"""Numerical geometry of plane curves against the bidisc.

* ``disc_witness`` searches polar grids for a zero of ``p`` strictly inside
  the bidisc.  Finding none is a resolution-qualified semi-decision.
* ``absolute_factor_count`` groups the z2-sheets of a square-free curve into
  monodromy orbits by tracking roots around every branch point; each orbit is
  one irreducible component over C.  Vertical lines ``z1 = a`` come from the
  z2-content and are counted separately.
* ``boundary_zero_scan`` looks for zeros with ``|z2| = 1`` and ``|z1| < 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .poly_core import upoly
from .poly_core.algorithms import content_in, exact_divide, resultant, squarefree_factor
from .poly_core.gaussian import GaussianRational
from .poly_core.poly import DomainError, Poly, grlex
from .poly_core.roots import (
    NonConvergenceError,
    UnivariateSlice,
    aberth_batch,
    cluster_roots,
    roots_univariate,
)

WITNESS_FOUND = "WITNESS_FOUND"
EXHAUSTED = "EXHAUSTED"
MAX_CURVE_DEGREE = 30


@dataclass(frozen=True)
class SearchConfig:
    radius_steps: int = 64
    angle_steps: int = 256
    margin: float = 1e-4
    newton_iterations: int = 50
    loop_offset: float = 1e-3
    step_floor: float = 1e-8
    initial_step: float = 1.0 / 16
    boundary_samples: int = 1024

    def __post_init__(self):
        for name in ("radius_steps", "angle_steps", "newton_iterations", "boundary_samples"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")
        if not (0 < self.margin < 1):
            raise DomainError("interior margin must lie in (0, 1)")
        if self.loop_offset <= 0 or self.step_floor <= 0 or self.initial_step <= 0:
            raise DomainError("loop parameters must be positive")

    def doubled(self) -> "SearchConfig":
        return SearchConfig(self.radius_steps * 2, self.angle_steps * 2, self.margin,
                            self.newton_iterations, self.loop_offset, self.step_floor,
                            self.initial_step, self.boundary_samples)


@dataclass
class DiscStatus:
    status: str
    witness: Optional[Tuple[complex, complex]] = None
    margins: Optional[Tuple[float, float]] = None
    residual: Optional[float] = None
    resolution: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == WITNESS_FOUND


@dataclass
class VarietyComponent:
    kind: str                                  # "curve" | "point"
    factor: Optional[Poly] = None              # Q(i) factor this component belongs to
    multiplicity: int = 1
    point: Optional[Tuple[complex, complex]] = None
    disc_status: Optional[DiscStatus] = None
    sheet_group: Optional[Tuple[int, ...]] = None
    numeric_factor: Optional[np.ndarray] = None
    description: str = ""
    retained: Optional[bool] = None
    caveats: List[str] = field(default_factory=list)


# numeric bivariate helpers; arrays are C[i, j] for z1^i z2^j

def as_array(p: Union[Poly, np.ndarray]) -> np.ndarray:
    if isinstance(p, Poly):
        return p.to_array()
    return np.atleast_2d(np.asarray(p, dtype=complex))


def eval_array(c: np.ndarray, z1, z2):
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    out = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
    for i in range(c.shape[0] - 1, -1, -1):
        row = np.zeros_like(out)
        for j in range(c.shape[1] - 1, -1, -1):
            row = row * z2 + c[i, j]
        out = out * z1 + row
    return out


def _scale(c: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(c))) if c.size else 1.0


def _slices(c: np.ndarray, values: np.ndarray, var: int) -> np.ndarray:
    """Coefficients (low first) in ``var`` after fixing the other variable at each value."""
    values = np.asarray(values, dtype=complex)
    if var == 1:
        powers = values[:, None] ** np.arange(c.shape[0])[None, :]
        return powers @ c
    powers = values[:, None] ** np.arange(c.shape[1])[None, :]
    return powers @ c.T


def _batch_roots(coeffs_low: np.ndarray) -> List[np.ndarray]:
    """Roots of many univariate polynomials (rows, low first), trimming vanishing leads."""
    out: List[Optional[np.ndarray]] = [None] * coeffs_low.shape[0]
    scale = np.max(np.abs(coeffs_low), axis=1)
    n = coeffs_low.shape[1] - 1
    full = np.abs(coeffs_low[:, -1]) > 1e-13 * np.maximum(scale, 1e-300)
    idx = np.nonzero(full)[0]
    if n >= 1 and idx.size:
        x, _, _ = aberth_batch(coeffs_low[idx, ::-1])
        for k, row in zip(idx, x):
            out[k] = row
    for k in range(coeffs_low.shape[0]):
        if out[k] is None:
            u = UnivariateSlice(tuple(coeffs_low[k]))
            if u.degree < 1:
                out[k] = np.zeros(0, complex)
            else:
                x, _, _ = aberth_batch(np.array(u.coeffs[::-1])[None, :])
                out[k] = x[0]
    return out


def _newton_univariate(coeffs_low: np.ndarray, r: complex, iters: int) -> complex:
    p = np.polynomial.Polynomial(coeffs_low)
    dp = p.deriv()
    for _ in range(iters):
        d = dp(r)
        if d == 0:
            break
        step = p(r) / d
        r = r - step
        if abs(step) < 1e-16 * (1 + abs(r)):
            break
    return r


def _sweep(c: np.ndarray, var: int, cfg: SearchConfig):
    """Fix the other variable on a polar grid of radius <= 1 - margin; solve in ``var``.

    Returns (best candidate or None, near-boundary flag).
    """
    limit = 1.0 - cfg.margin
    radii = limit * np.arange(cfg.radius_steps) / max(cfg.radius_steps - 1, 1)
    angles = 2 * np.pi * np.arange(cfg.angle_steps) / cfg.angle_steps
    grid = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    grid = np.concatenate([[0j], grid[cfg.angle_steps:]]) if cfg.radius_steps > 1 else grid[:1]
    slices = _slices(c, grid, var)
    roots = _batch_roots(slices)
    fixed = np.concatenate([np.full(len(r), g) for g, r in zip(grid, roots)])
    owner = np.concatenate([np.full(len(r), k) for k, r in enumerate(roots)]).astype(int)
    free = np.concatenate(roots) if roots else np.zeros(0, complex)
    near = bool(np.any(np.abs(np.abs(free) - limit) < 2 * cfg.margin))
    inside = np.abs(free) < limit
    if not np.any(inside):
        return None, near
    fixed, owner, free = fixed[inside], owner[inside], free[inside]
    w1, w2 = (fixed, free) if var == 1 else (free, fixed)
    weight = (1 - np.abs(w1) ** 2) * (1 - np.abs(w2) ** 2)
    scale = _scale(c)
    for k in np.argsort(-weight, kind="stable"):
        r = _newton_univariate(slices[owner[k]], free[k], cfg.newton_iterations)
        if abs(r) > limit:
            continue
        pt = (fixed[k], r) if var == 1 else (r, fixed[k])
        res = abs(eval_array(c, pt[0], pt[1]))
        if res > 1e-9 * scale:
            continue
        return (pt, res, weight[k]), near
    return None, near


def disc_witness(p: Union[Poly, np.ndarray], cfg: SearchConfig = SearchConfig()) -> DiscStatus:
    """Search for a zero of ``p`` with both coordinates of modulus <= 1 - margin.

    Among all grid hits the one with the largest kernel weight
    ``(1-|w1|^2)(1-|w2|^2)`` is returned, so the witness also gives the
    sharpest reproducing-kernel distance bound.
    """
    c = as_array(p)
    if isinstance(p, Poly):
        if p.is_zero():
            raise DomainError("the zero polynomial vanishes everywhere")
        if p.is_constant():
            raise DomainError("a nonzero constant has an empty zero set")
    elif c.size == 1 or np.all(np.abs(c.ravel()[1:]) == 0):
        raise DomainError("constant polynomial")
    used = cfg
    refined = False
    while True:
        best = None
        near_any = False
        for var in (1, 0):
            if c.shape[var] == 1:
                continue  # the polynomial does not involve this variable
            best, near = _sweep(c, var, used)
            near_any |= near
            if best is not None:
                break
        if best is not None or refined or not near_any:
            break
        used = used.doubled()
        refined = True
    resolution = {"radius_steps": used.radius_steps, "angle_steps": used.angle_steps,
                  "margin": used.margin, "refined": refined}
    if best is None:
        return DiscStatus(EXHAUSTED, resolution=resolution)
    (w1, w2), res, _ = best
    return DiscStatus(WITNESS_FOUND, (complex(w1), complex(w2)),
                      (1 - abs(w1), 1 - abs(w2)), float(res), resolution)


def boundary_zero_scan(p: Union[Poly, np.ndarray], cfg: SearchConfig = SearchConfig()) -> List[dict]:
    """Zeros with ``|z2| = 1`` and ``|z1| < 1 - margin`` (should be none for zero-free curves)."""
    c = as_array(p)
    if c.shape[0] == 1:
        return []
    theta = 2 * np.pi * np.arange(cfg.boundary_samples) / cfg.boundary_samples
    z2s = np.exp(1j * theta)
    slices = _slices(c, z2s, 0)
    flagged = []
    for z2v, rts in zip(z2s, _batch_roots(slices)):
        for r in rts:
            if abs(r) < 1 - cfg.margin:
                flagged.append({"z1": complex(r), "z2": complex(z2v), "abs_z1": float(abs(r))})
    return flagged


# monodromy

class TrackingFailure(RuntimeError):
    pass


def _match(old: np.ndarray, new: np.ndarray) -> Optional[np.ndarray]:
    """Permutation taking old roots to nearby new roots, or None if ambiguous."""
    n = len(old)
    if n == 1:
        return np.array([0])
    d = np.abs(old[:, None] - new[None, :])
    perm = np.argmin(d, axis=1)
    if len(set(perm.tolist())) != n:
        return None
    sep = np.abs(old[:, None] - old[None, :]) + np.diag(np.full(n, np.inf))
    move = d[np.arange(n), perm]
    if np.any(move > 0.25 * sep.min(axis=1)):
        return None
    return perm


def track(c: np.ndarray, path, roots: np.ndarray, cfg: SearchConfig) -> np.ndarray:
    """Continue the z2-roots of ``c(z1, .)`` along ``z1 = path(s)``, s from 0 to 1."""
    s = 0.0
    h = cfg.initial_step
    cur = np.array(roots, dtype=complex)
    while s < 1.0:
        h = min(h, 1.0 - s)
        z = path(s + h)
        coeffs = _slices(c, np.array([z]), 1)[0]
        x, _, _ = aberth_batch(coeffs[None, ::-1], cur[None, :], max_iter=60)
        new = x[0]
        perm = _match(cur, new)
        if perm is None:
            h /= 2
            if h < cfg.step_floor:
                raise TrackingFailure(f"step size fell below {cfg.step_floor} at z1={z}")
            continue
        cur = new[perm]
        s += h
        h = min(h * 1.5, 0.25)
    return cur


@dataclass
class AbsoluteFactorization:
    count: int
    sheet_groups: List[Tuple[int, ...]]
    certified: bool
    vertical_roots: List[complex]
    base_point: Optional[complex] = None
    sheets: Optional[np.ndarray] = None
    branch_points: List[complex] = field(default_factory=list)
    primitive: Optional[Poly] = None
    content: Optional[Poly] = None
    diagnostics: List[str] = field(default_factory=list)


def _segment_distance(a: complex, b: complex, x: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(x - a)
    t = max(0.0, min(1.0, ((x - a) * np.conj(ab)).real / abs(ab) ** 2))
    return abs(x - (a + t * ab))


def _radii(branch: Sequence[complex], cfg: SearchConfig) -> List[float]:
    out = []
    for k, b in enumerate(branch):
        others = [abs(b - o) for j, o in enumerate(branch) if j != k]
        r = 0.3 * min(others) if others else 0.5
        out.append(min(max(r, 0.0), 0.5))
    return out


def _choose_base(branch: Sequence[complex], radii: Sequence[float]) -> complex:
    centre = complex(np.mean(branch)) if len(branch) else 0j
    spread = max((abs(b - centre) for b in branch), default=0.0) + 1.0
    best, best_score = None, -np.inf
    for k in range(24):
        cand = centre + spread * (0.37 + 0.11 * k) * np.exp(1j * (0.713 + 2.399 * k))
        score = np.inf
        for i, b in enumerate(branch):
            score = min(score, (abs(cand - b) - radii[i]) / radii[i])
            for j, o in enumerate(branch):
                if j != i:
                    score = min(score, _segment_distance(cand, b, o) / radii[j] - 2.0)
        if score > best_score:
            best, best_score = cand, score
        if score > 1.0:
            break
    return best


def _roots_at(c: np.ndarray, z1: complex) -> np.ndarray:
    coeffs = _slices(c, np.array([z1]), 1)[0]
    return np.array([r for r, _ in roots_univariate(UnivariateSlice(tuple(coeffs)))])


def _poly_roots(p: Poly, var: int) -> List[complex]:
    a = upoly.from_poly(p, var)
    if upoly.deg(a) < 1:
        return []
    return [r for r, _ in roots_univariate(UnivariateSlice(tuple(upoly.to_complex(a))))]


def absolute_factor_count(p: Poly, cfg: SearchConfig = SearchConfig()) -> AbsoluteFactorization:
    """Number of irreducible components over C of a square-free curve."""
    if p.is_constant():
        raise DomainError("absolute factorization needs a non-constant polynomial")
    if any(k > 1 for _, k in squarefree_factor(p)):
        raise DomainError("absolute factorization needs a square-free polynomial")
    if max(p.degree_in(0), p.degree_in(1)) > MAX_CURVE_DEGREE:
        raise DomainError(f"curve degree exceeds {MAX_CURVE_DEGREE}")
    cont = content_in(p, 1)
    vertical = _poly_roots(cont, 0) if not cont.is_constant() else []
    prim = exact_divide(p, cont) if not cont.is_constant() else p.monic()
    n = prim.degree_in(1)
    if n <= 0:
        return AbsoluteFactorization(len(vertical), [], True, vertical, primitive=prim, content=cont)
    coeffs = prim.coefficients_in(1)
    lead = coeffs[n]
    branch: List[complex] = []
    if not lead.is_constant():
        branch += _poly_roots(lead, 0)
    if n >= 2:
        disc = resultant(prim, prim.derivative(1), 1)
        if not disc.is_constant():
            branch += _poly_roots(disc, 0)
    branch = [b for b, _ in cluster_roots(branch, radius=1e-9)]
    c = prim.to_array()
    if not branch:
        base = 0.3 + 0.2j
        sheets = _roots_at(c, base)
        groups = [(k,) for k in range(n)]
        return AbsoluteFactorization(len(groups) + len(vertical), groups, True, vertical,
                                     base, sheets, [], prim, cont)
    radii = _radii(branch, cfg)
    notes = []
    certified = True
    for r in radii:
        if r < cfg.loop_offset:
            certified = False
            notes.append("branch points closer than the loop offset")
    base = _choose_base(branch, radii)
    sheets = _roots_at(c, base)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for beta, rho in zip(branch, radii):
        rho = max(rho, cfg.loop_offset)
        direction = (base - beta) / abs(base - beta)
        start = beta + rho * direction
        phase = np.angle(direction)

        def seg_out(s, a=base, b=start):
            return a + s * (b - a)

        def circle(s, beta=beta, rho=rho, phase=phase):
            return beta + rho * np.exp(1j * (phase + 2 * np.pi * s))

        def seg_back(s, a=start, b=base):
            return a + s * (b - a)

        try:
            cur = track(c, seg_out, sheets, cfg)
            cur = track(c, circle, cur, cfg)
            cur = track(c, seg_back, cur, cfg)
        except (TrackingFailure, NonConvergenceError) as exc:
            certified = False
            notes.append(f"loop around {beta:.6g} failed: {exc}")
            continue
        perm = _match(sheets, cur)
        if perm is None:
            certified = False
            notes.append(f"loop around {beta:.6g} did not close onto the base sheets")
            continue
        for i, j in enumerate(perm):
            parent[find(i)] = find(int(j))
    groups_map = {}
    for i in range(n):
        groups_map.setdefault(find(i), []).append(i)
    groups = sorted(tuple(g) for g in groups_map.values())
    return AbsoluteFactorization(len(groups) + len(vertical), groups, certified, vertical,
                                 base, sheets, branch, prim, cont, notes)


def reconstruct_factor(fact: AbsoluteFactorization, group: Sequence[int],
                       cfg: SearchConfig = SearchConfig()) -> Optional[np.ndarray]:
    """Numeric coefficients of the absolute factor whose sheets are ``group``.

    Sheets are continued from the base point to sample abscissae on straight
    segments; any such path keeps an orbit's sheets together, so the samples
    lie on that factor.  The factor is the null vector of the evaluation
    matrix; None when the null space is not one-dimensional.
    """
    prim = fact.primitive
    c = prim.to_array()
    k = len(group)
    d1 = prim.degree_in(0)
    unknowns = (d1 + 1) * (k + 1)
    samples_needed = 2 * unknowns // k + 4
    radius = 1.0 + max((abs(b) for b in fact.branch_points), default=0.0) * 0.5
    pts_z1, pts_z2 = [], []
    angle = 0.0
    tries = 0
    while len(pts_z1) < samples_needed * k and tries < 4 * samples_needed:
        tries += 1
        angle += 2.399963
        target = radius * (0.6 + 0.4 * ((tries * 0.618) % 1.0)) * np.exp(1j * angle)
        if any(_segment_distance(fact.base_point, target, b) < 1e-2 for b in fact.branch_points):
            continue
        try:
            cur = track(c, lambda s, a=fact.base_point, b=target: a + s * (b - a), fact.sheets, cfg)
        except (TrackingFailure, NonConvergenceError):
            continue
        for g in group:
            pts_z1.append(target)
            pts_z2.append(cur[g])
    if len(pts_z1) < unknowns:
        return None
    z1v = np.array(pts_z1)
    z2v = np.array(pts_z2)
    # smallest z1-degree whose evaluation matrix has a one-dimensional null space
    for d in range(d1 + 1):
        cols = [(z1v ** i) * (z2v ** j) for i in range(d + 1) for j in range(k + 1)]
        mat = np.stack(cols, axis=1)
        norms = np.linalg.norm(mat, axis=0)
        norms[norms == 0] = 1.0
        _, sv, vh = np.linalg.svd(mat / norms, full_matrices=False)
        if sv[-1] > 1e-8 * sv[0]:
            continue
        if len(sv) > 1 and sv[-2] < 1e-6 * sv[0]:
            return None
        vec = vh[-1].conj() / norms
        return normalize_array(vec.reshape(d + 1, k + 1))
    return None


def normalize_array(h: np.ndarray) -> np.ndarray:
    """Scale so the graded-lex leading coefficient is 1 (after dropping noise)."""
    h = np.array(h, dtype=complex)
    tol = 1e-9 * np.max(np.abs(h))
    h[np.abs(h) < tol] = 0
    idx = [(i, j) for i in range(h.shape[0]) for j in range(h.shape[1]) if h[i, j] != 0]
    lead = max(idx, key=lambda e: grlex(e))
    return h / h[lead]


def array_product(arrays: Sequence[np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for a in arrays:
        res = np.zeros((out.shape[0] + a.shape[0] - 1, out.shape[1] + a.shape[1] - 1), complex)
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                if a[i, j] != 0:
                    res[i:i + out.shape[0], j:j + out.shape[1]] += a[i, j] * out
        out = res
    return out


def rationalize_array(h: np.ndarray, tol: float = 1e-7) -> Optional[Poly]:
    """Exact polynomial with the same (normalized) coefficients, when they are in Q(i)."""
    h = normalize_array(h)
    terms = {}
    for i in range(h.shape[0]):
        for j in range(h.shape[1]):
            if h[i, j] != 0:
                g = GaussianRational.from_complex(complex(h[i, j]), max_den=10**6, tol=tol)
                if g is None:
                    return None
                terms[(i, j)] = g
    return Poly(terms, 2)


def exact_subproduct(p: Poly, numeric_factors: Sequence[np.ndarray]) -> Optional[Poly]:
    """Recover an exact divisor of ``p`` from numeric factors; verified by exact division."""
    cand = rationalize_array(array_product(numeric_factors))
    if cand is None or cand.is_constant():
        return None
    try:
        exact_divide(p, cand)
    except DomainError:
        return None
    return cand.monic()
