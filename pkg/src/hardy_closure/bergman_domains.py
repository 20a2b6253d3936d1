"""Bergman-space density series on Reinhardt domains and the unit ball.

The maximal ideal at ``w`` is dense exactly when the point-evaluation series
``sum |w^a|^2 / ||z^a||^2`` diverges.  Monomial norms on
``{|z1|^p + |z2|^q < 1}`` are Beta-function expressions.  Series are summed in
the log domain along anti-diagonals ``r1 + r2 = s`` and classified from the
partial sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
import numpy as np
from scipy.special import gammaln

from .poly_core.poly import DomainError

CONVERGED = "CONVERGED"
DIVERGING = "DIVERGING"
INCONCLUSIVE = "INCONCLUSIVE"

TAIL_TOL = 1e-10
GROWTH_FACTOR = 1.5
SUM_CAP = 1e6
BOUNDARY_TOL = 1e-9
RATIO_WINDOW = 32
VARIANTS = ("prop41_plus1", "lemma42_plus2", "lemma41", "ball")


def beta(r: float, s: float) -> float:
    if not (r > 0 and s > 0):
        raise DomainError("Beta arguments must be positive")
    if r + s < 170:
        return math.gamma(r) * math.gamma(s) / math.gamma(r + s)
    return math.exp(math.lgamma(r) + math.lgamma(s) - math.lgamma(r + s))


def beta_quadrature(r: float, s: float, dps: int = 30) -> float:
    """Beta function from its integral form (independent oracle)."""
    # t = u^(1/r) near 0 and 1 - t = v^(1/s) near 1 remove the endpoint singularities
    with mpmath.workdps(dps):
        r, s = mpmath.mpf(r), mpmath.mpf(s)
        half = mpmath.mpf(1) / 2
        left = mpmath.quad(lambda u: (1 - u ** (1 / r)) ** (s - 1), [0, half ** r]) / r
        right = mpmath.quad(lambda v: (1 - v ** (1 / s)) ** (r - 1), [0, half ** s]) / s
    return float(left + right)


def log_beta(r, s):
    return gammaln(r) + gammaln(s) - gammaln(np.add(r, s))


def lemma41_partial(a, P: int) -> Fraction:
    """Exact partial sum of sum_{m+n<=P} C(m+n, m) a^m (1-a)^n (equals P + 1)."""
    a = Fraction(a)
    if not (0 <= a <= 1):
        raise DomainError("a must lie in [0, 1]")
    if P < 0:
        raise DomainError("P must be non-negative")
    b = 1 - a
    total = Fraction(0)
    for n_tot in range(P + 1):
        for m in range(n_tot + 1):
            total += math.comb(n_tot, m) * a ** m * b ** (n_tot - m)
    return total


def odd_subseries_partial(a, S: int, exact: bool = False):
    """Partial sum of sum_{m,n>0, m+n<=S} C(2(m+n)-2, 2m-1) a^(2m-1) (1-a)^(2n-1)."""
    if not (0 <= float(a) <= 1):
        raise DomainError("a must lie in [0, 1]")
    if exact:
        a = Fraction(a)
        b = 1 - a
        total = Fraction(0)
        for s in range(2, S + 1):
            for m in range(1, s):
                n = s - m
                total += math.comb(2 * s - 2, 2 * m - 1) * a ** (2 * m - 1) * b ** (2 * n - 1)
        return total
    a = float(a)
    if a in (0.0, 1.0):
        return 0.0
    la, lb = math.log(a), math.log1p(-a)
    total = 0.0
    for s in range(2, S + 1):
        m = np.arange(1, s)
        k = 2 * m - 1
        top = 2 * s - 2
        logs = gammaln(top + 1) - gammaln(k + 1) - gammaln(top - k + 1) + k * la + (top - k) * lb
        total += float(np.sum(np.exp(logs)))
    return total


@dataclass(frozen=True)
class ReinhardtDomain:
    p: float
    q: float

    def __post_init__(self):
        if not (0 < self.p < math.inf and 0 < self.q < math.inf):
            raise DomainError("domain exponents must be positive and finite")

    def defining(self, w) -> float:
        return abs(w[0]) ** self.p + abs(w[1]) ** self.q


@dataclass
class SeriesDiagnostic:
    variant: str
    checkpoints: List[Tuple[int, float]]
    classification: str
    tail_bound: Optional[float] = None
    growth_rate: Optional[float] = None
    terms_used: int = 0
    location: str = ""
    thresholds: dict = field(default_factory=lambda: {
        "tail": TAIL_TOL, "growth_factor": GROWTH_FACTOR, "sum_cap": SUM_CAP})
    domain: Optional[ReinhardtDomain] = None
    point: Optional[Tuple[complex, complex]] = None

    @property
    def total(self) -> float:
        return self.checkpoints[-1][1] if self.checkpoints else 0.0

    @property
    def density_verdict(self) -> str:
        return {DIVERGING: "dense", CONVERGED: "not dense"}.get(self.classification, "undetermined")


def _log_abs(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def _diagonal_logs(variant: str, s: int, lw1: float, lw2: float, p: float, q: float) -> np.ndarray:
    """Log of every term on the anti-diagonal r1 + r2 = s."""
    r1 = np.arange(s + 1, dtype=float)
    r2 = s - r1
    with np.errstate(invalid="ignore"):
        pw = np.where(r1 > 0, 2 * r1 * lw1, 0.0) + np.where(r2 > 0, 2 * r2 * lw2, 0.0)
    if variant == "prop41_plus1":
        return (math.log(2 * math.pi ** 2 / p) + np.log(r2 + 1) + pw
                - log_beta((2 * r1 + 2) / p, (2 * r2 + 2) / q + 1))
    if variant == "lemma42_plus2":
        return pw - log_beta((2 * r1 + 2) / p, (2 * r2 + 2) / q + 2)
    if variant == "ball":
        # 1 / ||z^a||^2 on the unit ball of C^2 is (|a|+2)! / (pi^2 a1! a2!)
        return pw + gammaln(s + 3) - gammaln(r1 + 1) - gammaln(r2 + 1) - 2 * math.log(math.pi)
    if variant == "lemma41":
        # here lw1, lw2 are log a and log(1-a); 0^0 = 1
        with np.errstate(invalid="ignore"):
            return (gammaln(s + 1) - gammaln(r1 + 1) - gammaln(r2 + 1)
                    + np.where(r1 > 0, r1 * lw1, 0.0) + np.where(r2 > 0, r2 * lw2, 0.0))
    raise DomainError(f"unknown series variant {variant!r}")


def _logsumexp(v: np.ndarray) -> float:
    m = float(np.max(v))
    if m == -math.inf:
        return -math.inf
    return m + math.log(float(np.sum(np.exp(v - m))))


def _checkpoint_marks(N: int) -> List[int]:
    marks = {max(N // 4, 1), max(N // 2, 1), N}
    k = 1
    while k < N // 4:
        marks.add(k)
        k *= 2
    return sorted(marks)


def _run_series(variant: str, lw1: float, lw2: float, p: float, q: float, N: int) -> SeriesDiagnostic:
    """Accumulate anti-diagonals up to r1 + r2 = N.

    CONVERGED: the largest diagonal ratio over the last window gives a
    geometric tail bound below TAIL_TOL.  DIVERGING: past a quarter of the
    budget the sum exceeds SUM_CAP while diagonals are not decreasing, or the
    sum grows by GROWTH_FACTOR over the last doubling.  A large sum alone is
    not enough, since interior points near the boundary have large finite sums.
    """
    if N < 1:
        raise DomainError("term budget must be at least 1")
    marks = set(_checkpoint_marks(N))
    log_total = -math.inf
    diag_logs: List[float] = []
    checkpoints: List[Tuple[int, float]] = []
    classification = INCONCLUSIVE
    tail = None
    growth = None
    rho = None
    s_done = 0
    for s in range(N + 1):
        ld = _logsumexp(_diagonal_logs(variant, s, lw1, lw2, p, q))
        diag_logs.append(ld)
        log_total = float(np.logaddexp(log_total, ld))
        s_done = s
        if s in marks:
            checkpoints.append((s, math.exp(min(log_total, 709.0))))
        if s < RATIO_WINDOW:
            continue
        window = np.array(diag_logs[-RATIO_WINDOW:])
        tail = None
        if np.all(np.isinf(window)):
            rho, tail = 0.0, 0.0
        else:
            steps = np.diff(window)
            steps = steps[np.isfinite(steps)]
            rho = math.exp(float(np.max(steps))) if steps.size else 0.0
            if rho < 1:
                tail = math.exp(diag_logs[-1]) * rho / (1 - rho)
        if tail is not None and tail < TAIL_TOL:
            classification = CONVERGED
            break
        if s >= N // 4 and log_total > math.log(SUM_CAP) and rho >= 1 - 1e-12:
            classification = DIVERGING
            break
    if not checkpoints or checkpoints[-1][0] != s_done:
        checkpoints.append((s_done, math.exp(min(log_total, 709.0))))
    if len(checkpoints) >= 2 and checkpoints[-2][1] > 0:
        growth = checkpoints[-1][1] / checkpoints[-2][1]
    if classification == INCONCLUSIVE and s_done == N and growth is not None:
        if growth >= GROWTH_FACTOR:
            classification = DIVERGING
        elif log_total > math.log(SUM_CAP) and rho is not None and rho >= 1 - 1e-12:
            classification = DIVERGING
    return SeriesDiagnostic(variant, checkpoints, classification, tail, growth, s_done + 1)


def _location(value: float) -> str:
    if abs(value - 1) <= BOUNDARY_TOL:
        return "boundary"
    return "interior" if value < 1 else "exterior"


def reinhardt_density_series(dom: ReinhardtDomain, w, N: int = 10000,
                             variant: str = "prop41_plus1") -> SeriesDiagnostic:
    if variant not in ("prop41_plus1", "lemma42_plus2"):
        raise DomainError("variant must be prop41_plus1 or lemma42_plus2")
    w = (complex(w[0]), complex(w[1]))
    diag = _run_series(variant, _log_abs(abs(w[0])), _log_abs(abs(w[1])), dom.p, dom.q, N)
    diag.location = _location(dom.defining(w))
    diag.domain, diag.point = dom, w
    return diag


def ball_density_series(w, N: int = 10000) -> SeriesDiagnostic:
    w = (complex(w[0]), complex(w[1]))
    diag = _run_series("ball", _log_abs(abs(w[0])), _log_abs(abs(w[1])), 2.0, 2.0, N)
    diag.location = _location(abs(w[0]) ** 2 + abs(w[1]) ** 2)
    diag.point = w
    return diag


def lemma41_series(a: float, N: int = 10000) -> SeriesDiagnostic:
    if not (0 <= a <= 1):
        raise DomainError("a must lie in [0, 1]")
    return _run_series("lemma41", _log_abs(a), _log_abs(1 - a), 1.0, 1.0, N)


def ball_kernel(w) -> float:
    """Diagonal of the Bergman kernel of the unit ball in C^2."""
    r2 = abs(w[0]) ** 2 + abs(w[1]) ** 2
    if r2 >= 1:
        raise DomainError("point must be inside the unit ball")
    return 2.0 / (math.pi ** 2 * (1 - r2) ** 3)


def ball_monomial_norm_sq(a1: int, a2: int) -> float:
    return math.pi ** 2 * math.factorial(a1) * math.factorial(a2) / math.factorial(a1 + a2 + 2)


def reinhardt_monomial_norm_sq(dom: ReinhardtDomain, a1: int, a2: int) -> float:
    """||z^a||^2 on the domain, by integrating in polar coordinates."""
    p, q = dom.p, dom.q
    return (4 * math.pi ** 2 / (p * q)) * beta((2 * a1 + 2) / p, (2 * a2 + 2) / q + 1) \
        / ((2 * a2 + 2) / q)


def monte_carlo_ball_norm_sq(a1: int, a2: int, samples: int = 200000, seed: int = 0) -> Tuple[float, float]:
    """(estimate, standard error) of ||z^a||^2 by uniform sampling of the ball."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, 4))
    x /= np.linalg.norm(x, axis=1)[:, None]
    x *= rng.uniform(size=(samples, 1)) ** 0.25
    z1 = x[:, 0] + 1j * x[:, 1]
    z2 = x[:, 2] + 1j * x[:, 3]
    vals = np.abs(z1) ** (2 * a1) * np.abs(z2) ** (2 * a2)
    vol = math.pi ** 2 / 2
    return float(vol * vals.mean()), float(vol * vals.std() / math.sqrt(samples))


@dataclass
class MinorantRecord:
    checkpoints: List[Tuple[int, float, float]]
    holds: bool
    injective: bool


def minorant_check(dom: ReinhardtDomain, w, N: int = 400) -> MinorantRecord:
    """Compare the '+2' series with its Beta(2m, 2n) subseries at a boundary point.

    Each (m, n) with m, n >= 1 is matched to (r1, r2) = (ceil(p m), ceil(q n));
    its term is dominated by that of the full series.  The matching is
    one-to-one only when p, q >= 1.
    """
    a, b = abs(complex(w[0])), abs(complex(w[1]))
    p, q = dom.p, dom.q
    la, lb = _log_abs(a), _log_abs(b)
    lhs_rows = [(_diagonal_logs("lemma42_plus2", s, la, lb, p, q)) for s in range(N + 1)]
    pairs = {}
    m = 1
    while math.ceil(p * m) <= N:
        n = 1
        while math.ceil(p * m) + math.ceil(q * n) <= N:
            r = (math.ceil(p * m), math.ceil(q * n))
            log_term = ((p + 2) * la + (q + 2) * lb + (2 * m - 1) * p * la + (2 * n - 1) * q * lb
                        - float(log_beta(2 * m, 2 * n)))
            pairs.setdefault(r, []).append(log_term)
            n += 1
        m += 1
    injective = all(len(v) == 1 for v in pairs.values())
    checkpoints = []
    holds = True
    for mark in sorted({max(N // 4, 1), max(N // 2, 1), N}):
        lhs = sum(float(np.sum(np.exp(lhs_rows[s]))) for s in range(mark + 1))
        rhs = sum(math.exp(t) for r, v in pairs.items() if sum(r) <= mark for t in v)
        checkpoints.append((mark, lhs, rhs))
        holds &= lhs >= rhs * (1 - 1e-12)
    return MinorantRecord(checkpoints, holds, injective)
