"""Hardy space H^2 of the bidisc: norms, density distances and kernel bounds.

Monomials are orthonormal in H^2, so the norm of a polynomial is the
Euclidean norm of its coefficient vector and distances to ``p * P_d`` are
ordinary least-squares residuals.  Rational functions are handled by
sampling on the torus, where the trapezoidal rule is exact for
trigonometric polynomials of degree below the grid size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from .poly_core.poly import DomainError, Poly

Exponent = Tuple[int, int]


class SingularSampleError(DomainError):
    def __init__(self, point, modulus):
        super().__init__(f"denominator modulus {modulus:.3e} below 1e-12 at grid point {point}")
        self.point = point
        self.modulus = modulus


@dataclass
class HardyVector:
    coefficients: Dict[Exponent, complex]
    degree_bound: int = 0

    @classmethod
    def from_poly(cls, p: Poly) -> "HardyVector":
        coeffs = {e: complex(c) for e, c in p.terms.items()}
        return cls(coeffs, max(p.degree, 0))

    def to_array(self) -> np.ndarray:
        if not self.coefficients:
            return np.zeros((1, 1), complex)
        d1 = max(e[0] for e in self.coefficients) + 1
        d2 = max(e[1] for e in self.coefficients) + 1
        arr = np.zeros((d1, d2), complex)
        for e, c in self.coefficients.items():
            arr[e] = c
        return arr


def _vector(v: Union[HardyVector, Poly]) -> HardyVector:
    return HardyVector.from_poly(v) if isinstance(v, Poly) else v


def h2_norm(v: Union[HardyVector, Poly]) -> float:
    vals = np.array(list(_vector(v).coefficients.values()), dtype=complex)
    return float(np.linalg.norm(vals)) if vals.size else 0.0


def torus_norm(v: Union[HardyVector, Poly], n: Optional[int] = None) -> float:
    """Norm recovered from torus samples by a 2-D FFT (independent of the coefficient route)."""
    arr = _vector(v).to_array()
    n = n or 1 << max(int(max(arr.shape)).bit_length(), 3)
    if n < max(arr.shape):
        raise DomainError("torus grid must exceed the polynomial degree")
    theta = 2 * np.pi * np.arange(n) / n
    z = np.exp(1j * theta)
    samples = np.zeros((n, n), complex)
    for i in range(arr.shape[0] - 1, -1, -1):
        row = np.zeros(n, complex)
        for j in range(arr.shape[1] - 1, -1, -1):
            row = row * z + arr[i, j]
        samples = samples * z[:, None] + row[None, :]
    coeffs = np.fft.fft2(samples) / (n * n)
    return float(np.sqrt(np.sum(np.abs(coeffs) ** 2)))


def monomials_upto(d: int) -> List[Exponent]:
    return [(i, t - i) for t in range(d + 1) for i in range(t, -1, -1)]


@dataclass
class LeastSquaresResult:
    distance: float
    minimizer: List[Dict[Exponent, complex]]
    rank: int
    columns: int

    @property
    def rank_deficient(self) -> bool:
        return self.rank < self.columns


def _least_squares(generators: Sequence[Poly], d: int) -> LeastSquaresResult:
    """min ||1 - sum g_i q_i|| over q_i with deg(q_i) <= d."""
    if d < 0:
        raise DomainError("degree bound must be non-negative")
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise DomainError("distance to the zero ideal is undefined here")
    top = d + max(g.degree for g in gens)
    rows = {e: k for k, e in enumerate(monomials_upto(top))}
    shifts = monomials_upto(d)
    mat = np.zeros((len(rows), len(gens) * len(shifts)), complex)
    for gi, g in enumerate(gens):
        items = [(e, complex(c)) for e, c in g.terms.items()]
        for mi, m in enumerate(shifts):
            col = gi * len(shifts) + mi
            for e, c in items:
                mat[rows[(e[0] + m[0], e[1] + m[1])], col] = c
    rhs = np.zeros(len(rows), complex)
    rhs[rows[(0, 0)]] = 1.0
    q, r, piv = scipy.linalg.qr(mat, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    rank = int(np.sum(diag > 1e-12 * max(diag[0], 1e-300))) if diag.size else 0
    qr_ = q[:, :rank]
    proj = qr_ @ (qr_.conj().T @ rhs)
    dist = float(np.linalg.norm(rhs - proj))
    sol = np.zeros(mat.shape[1], complex)
    if rank:
        sol[piv[:rank]] = scipy.linalg.solve_triangular(r[:rank, :rank], qr_.conj().T @ rhs)
    minimizers = []
    for gi in range(len(gens)):
        block = sol[gi * len(shifts):(gi + 1) * len(shifts)]
        minimizers.append({m: complex(c) for m, c in zip(shifts, block) if abs(c) > 1e-14})
    return LeastSquaresResult(dist, minimizers, rank, mat.shape[1])


def density_distance(p: Poly, d: int) -> LeastSquaresResult:
    """Distance in H^2 from 1 to ``p * P_d`` and the minimizing q."""
    if p.is_zero():
        raise DomainError("p must be nonzero")
    return _least_squares([p], d)


def ideal_distance(generators: Sequence[Poly], d: int) -> LeastSquaresResult:
    """Distance from 1 to ``sum g_i * P_d``; a lower bound for every larger truncation."""
    return _least_squares(list(generators), d)


def distance_profile(p: Union[Poly, Sequence[Poly]], degrees: Sequence[int]) -> List[float]:
    gens = [p] if isinstance(p, Poly) else list(p)
    return [_least_squares(gens, d).distance for d in degrees]


def kernel_lower_bound(witnesses: Sequence[Tuple[complex, complex]]) -> float:
    """Lower bound for the distance from 1 to any space of functions vanishing at a witness.

    For f(w) = 0, |<1 - f, k_w>| = 1 with ||k_w||^2 = 1/((1-|w1|^2)(1-|w2|^2)).
    """
    best = 0.0
    for w in witnesses:
        a, b = abs(complex(w[0])), abs(complex(w[1]))
        if a >= 1 or b >= 1:
            raise DomainError(f"witness {w} is not inside the open bidisc")
        best = max(best, math.sqrt((1 - a * a) * (1 - b * b)))
    return best


@dataclass
class FkResult:
    norm: float
    sup: float
    min_denominator: float
    grid: int
    refined: bool


def _fk_on_grid(p: Poly, k: int, n: int, shrink_var: int):
    theta = 2 * np.pi * np.arange(n) / n
    z = np.exp(1j * theta)
    z1 = z[:, None]
    z2 = z[None, :]
    s = 1.0 - 1.0 / k
    num = p.evaluate_grid(z1, z2)
    den = p.evaluate_grid(s * z1, z2) if shrink_var == 0 else p.evaluate_grid(z1, s * z2)
    mod = np.abs(den)
    idx = np.unravel_index(int(np.argmin(mod)), mod.shape)
    if mod[idx] < 1e-12:
        raise SingularSampleError((complex(z[idx[0]]), complex(z[idx[1]])), float(mod[idx]))
    f = num / den
    norm = float(np.sqrt(np.mean(np.abs(f - 1) ** 2)))
    return norm, float(np.max(np.abs(f))), float(mod[idx])


def fk_norm(p: Poly, k: int, n: int = 512, shrink_var: int = 0) -> FkResult:
    """Torus estimate of ||f_k - 1|| and sup |f_k| for f_k = p / p(shrunk variable)."""
    if k < 1 or int(k) != k:
        raise DomainError("k must be a positive integer")
    if p.is_zero():
        raise DomainError("p must be nonzero")
    if k == 1:
        raise DomainError("k = 1 shrinks to the origin slice; use k >= 2")
    norm, sup, mind = _fk_on_grid(p, k, n, shrink_var)
    coarse, _, _ = _fk_on_grid(p, k, max(n // 2, 8), shrink_var)
    refined = False
    if abs(coarse - norm) > 1e-4 * max(norm, 1e-300):
        norm, sup, mind = _fk_on_grid(p, k, 2 * n, shrink_var)
        n, refined = 2 * n, True
    return FkResult(norm, sup, mind, n, refined)


def quotient_ratio(alpha: complex, r: float, z: complex) -> float:
    return abs(z - alpha) / abs(r * z - alpha)


UNIT_TOL = 1e-12  # roots computed on the unit circle may round inside it


def _check_radius(r: float):
    if not (0.5 < r < 1):
        raise DomainError("r must lie in (1/2, 1)")


def quotient_bound_check(alpha: complex, r: float, n: int = 4096) -> float:
    """Max of |(z - alpha)/(r z - alpha)| over n unit-circle samples (at most 2)."""
    if abs(alpha) < 1 - UNIT_TOL:
        raise DomainError("alpha must satisfy |alpha| >= 1")
    _check_radius(r)
    z = np.exp(2j * np.pi * np.arange(n) / n)
    return float(np.max(np.abs(z - alpha) / np.abs(r * z - alpha)))


def product_bound_check(roots: Sequence[complex], r: float, n: int = 4096) -> float:
    """Max of |p(z)/p(r z)| on the circle for p with the given roots (at most 2^deg)."""
    _check_radius(r)
    roots = np.asarray(roots, dtype=complex)
    if np.any(np.abs(roots) < 1 - UNIT_TOL):
        raise DomainError("all roots must satisfy |root| >= 1")
    z = np.exp(2j * np.pi * np.arange(n) / n)[:, None]
    ratio = np.prod(np.abs(z - roots[None, :]) / np.abs(r * z - roots[None, :]), axis=1)
    return float(np.max(ratio))


@dataclass
class DensityDiagnostic:
    degrees: List[int]
    distances: List[float]
    kernel_bound: float = 0.0
    ks: List[int] = field(default_factory=list)
    fk_norms: List[float] = field(default_factory=list)
    fk_sups: List[float] = field(default_factory=list)
    sup_bound: Optional[float] = None
    ranks: List[int] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    def strictly_decreasing(self, step: float = 1e-6) -> bool:
        return all(a - b >= step for a, b in zip(self.distances, self.distances[1:]))

    def fk_decreasing(self) -> bool:
        return bool(self.fk_norms) and all(a > b for a, b in zip(self.fk_norms, self.fk_norms[1:]))

    @property
    def floor(self) -> Optional[float]:
        return min(self.distances) if self.distances else None


def density_diagnostic(generators: Union[Poly, Sequence[Poly]], degrees: Sequence[int],
                       ks: Sequence[int] = (), witnesses: Sequence = (), grid: int = 512) -> DensityDiagnostic:
    """Distance sweep plus, for a single polynomial, the f_k sweep and its sup bound."""
    gens = [generators] if isinstance(generators, Poly) else list(generators)
    diag = DensityDiagnostic(list(degrees), [])
    for d in degrees:
        res = _least_squares(gens, d)
        diag.distances.append(res.distance)
        diag.ranks.append(res.rank)
    diag.kernel_bound = kernel_lower_bound(witnesses) if witnesses else 0.0
    if len(gens) == 1 and ks:
        p = gens[0]
        diag.sup_bound = float(2 ** p.degree_in(0))
        for k in ks:
            try:
                fk = fk_norm(p, k, grid)
            except SingularSampleError as exc:
                diag.errors.append(str(exc))
                continue
            diag.ks.append(k)
            diag.fk_norms.append(fk.norm)
            diag.fk_sups.append(fk.sup)
    return diag
