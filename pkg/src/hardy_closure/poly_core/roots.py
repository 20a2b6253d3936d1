"""Simultaneous (Aberth-Ehrlich) root finding for complex univariate polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .poly import DomainError, Poly

TRIM_RELATIVE = 1e-13
MAX_ITER = 200
STEP_TOL = 1e-13
CLUSTER_RADIUS = 1e-6


class NonConvergenceError(RuntimeError):
    """Aberth iteration hit the iteration cap; carries the best iterate."""

    def __init__(self, message, best_iterate, residuals):
        super().__init__(message)
        self.best_iterate = best_iterate
        self.residuals = residuals


@dataclass(frozen=True)
class UnivariateSlice:
    """Complex coefficients (lowest degree first) plus where they came from."""

    coeffs: Tuple[complex, ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        c = [complex(x) for x in self.coeffs]
        scale = max((abs(x) for x in c), default=0.0)
        while c and abs(c[-1]) <= TRIM_RELATIVE * scale:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        out = 0j
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def slice_poly(p: Poly, var: int, value: complex) -> UnivariateSlice:
    """Specialize the other variable of a bivariate polynomial to ``value``."""
    other = 1 - var
    d = max(p.degree_in(var), 0)
    coeffs = [0j] * (d + 1)
    for e, c in p.terms.items():
        coeffs[e[var]] += complex(c) * complex(value) ** e[other]
    names = ("z1", "z2")
    return UnivariateSlice(tuple(coeffs), {"variable": names[var], "fixed": names[other], "value": complex(value)})


def _initial_guesses(high_first: np.ndarray) -> np.ndarray:
    n = high_first.shape[1] - 1
    lead = high_first[:, :1]
    ratio = np.abs(high_first[:, 1:] / lead)
    # Fujiwara-style radius: 2 * max |a_k/a_n|^(1/k)
    k = np.arange(1, n + 1)
    radius = 2.0 * np.max(ratio ** (1.0 / k), axis=1)
    radius = np.where(radius > 0, radius, 1.0)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius[:, None] * 0.5 * np.exp(1j * angles)[None, :]


def aberth_batch(high_first: np.ndarray, initial: Optional[np.ndarray] = None,
                 max_iter: int = MAX_ITER, tol: float = STEP_TOL):
    """Aberth iteration for a batch of same-degree polynomials.

    ``high_first`` has shape (B, n+1) with nonzero leading column.  Returns
    (roots (B, n), converged mask (B,), iterations used).
    """
    a = np.asarray(high_first, dtype=complex)
    if a.ndim == 1:
        a = a[None, :]
    n = a.shape[1] - 1
    batch = a.shape[0]
    if n == 0:
        return np.zeros((batch, 0), complex), np.ones(batch, bool), 0
    a = a / a[:, :1]
    da = a[:, :-1] * np.arange(n, 0, -1)[None, :]
    x = _initial_guesses(a) if initial is None else np.array(initial, dtype=complex).reshape(batch, n)
    if n == 1:
        return -a[:, 1:2].copy(), np.ones(batch, bool), 1
    done = np.zeros((batch, n), dtype=bool)
    eye = np.eye(n, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        pv = np.zeros_like(x)
        for k in range(n + 1):
            pv = pv * x + a[:, k:k + 1]
        dv = np.zeros_like(x)
        for k in range(n):
            dv = dv * x + da[:, k:k + 1]
        diff = x[:, :, None] - x[:, None, :]
        diff[:, eye] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / diff
            inv[:, eye] = 0.0
            s = inv.sum(axis=2)
            ratio = np.where(pv == 0, 0, pv / dv)
            delta = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(delta)
        if bad.any():
            delta[bad] = 1e-3 * (1 + np.abs(x[bad]))
        delta[done] = 0
        # a residual at the rounding floor counts as converged
        absx = np.abs(x)
        floor = np.zeros(x.shape)
        for k in range(n + 1):
            floor = floor * absx + np.abs(a[:, k:k + 1])
        at_floor = np.abs(pv) <= 4 * (n + 1) * np.finfo(float).eps * floor
        x = x - delta
        done |= (np.abs(delta) < tol * (1.0 + np.abs(x))) | at_floor
        if done.all():
            break
    return x, done.all(axis=1), it


def _taylor_scales(coeffs_low, c, j):
    from math import comb

    value = 0j
    scale = 0.0
    for i in range(j, len(coeffs_low)):
        w = comb(i, j) * complex(c) ** (i - j)
        value += coeffs_low[i] * w
        scale += abs(coeffs_low[i]) * abs(w)
    return abs(value), scale


def _refine_clusters(coeffs_low, roots: np.ndarray, loose: float = 1e-3,
                     relative: float = 1e-11) -> np.ndarray:
    """Snap near-multiple roots onto a common, accurately located center.

    A k-fold root is a simple root of the (k-1)-th derivative, so Newton on
    that derivative pins the center down far better than the spread-out
    Aberth iterates.  A group is merged only if the Taylor coefficients of
    order < k at the refined center vanish to ``relative`` of their scale.
    """
    out = np.array(roots, dtype=complex)
    groups = cluster_roots(out, radius=loose)
    if all(m == 1 for _, m in groups):
        return out
    p = np.polynomial.Polynomial(coeffs_low)
    for center, k in groups:
        if k < 2:
            continue
        dk = p.deriv(k - 1)
        d2 = dk.deriv()
        c = center
        for _ in range(20):
            slope = d2(c)
            if slope == 0:
                break
            step = dk(c) / slope
            c = c - step
            if abs(step) < 1e-15 * (1 + abs(c)):
                break
        ok = all(
            val <= relative * scale + 1e-300
            for val, scale in (_taylor_scales(coeffs_low, c, j) for j in range(k))
        )
        if not ok:
            continue
        members = np.abs(out - center) < loose * (1 + abs(center))
        if members.sum() == k:
            out[members] = c
    return out


def residual_bound(coeffs: Sequence[complex]) -> float:
    return 1e-9 * (1.0 + max(abs(c) for c in coeffs))


def _polish(coeffs_low: Sequence[complex], roots: np.ndarray) -> np.ndarray:
    """One Newton step per root, kept only if it lowers the residual."""
    p = np.polynomial.Polynomial(coeffs_low)
    dp = p.deriv()
    out = roots.copy()
    for i, r in enumerate(roots):
        d = dp(r)
        if d != 0:
            cand = r - p(r) / d
            if abs(p(cand)) < abs(p(r)):
                out[i] = cand
    return out


def roots_univariate(u: UnivariateSlice, initial=None, max_iter: int = MAX_ITER,
                     tol: float = STEP_TOL) -> List[Tuple[complex, float]]:
    """All roots with multiplicity, each paired with its residual ``|u(root)|``.

    Clustered roots (multiple roots in exact arithmetic) converge only
    linearly and settle at a precision floor; such a cluster is accepted when
    every member's residual is within the reporting bound.
    """
    if u.degree < 1:
        raise DomainError("root finding needs degree >= 1")
    high = np.array(u.coeffs[::-1], dtype=complex)[None, :]
    init = None if initial is None else np.asarray(initial, complex)[None, :]
    x, ok, _ = aberth_batch(high, init, max_iter=max_iter, tol=tol)
    roots = _refine_clusters(u.coeffs, x[0])
    res = np.array([abs(u(r)) for r in roots])
    bound = residual_bound(u.coeffs)
    if not ok[0] and not (res <= bound).all():
        raise NonConvergenceError(
            f"Aberth iteration did not converge in {max_iter} steps", roots.tolist(), res.tolist())
    return [(complex(r), float(e)) for r, e in zip(roots, res)]


def cluster_roots(roots: Sequence[complex], radius: float = CLUSTER_RADIUS):
    """Group roots closer than ``radius*(1+|root|)`` (single linkage).

    Returns a list of (centroid, multiplicity) sorted by (real, imag).
    """
    roots = [complex(r) for r in roots]
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < radius * (1 + max(abs(roots[i]), abs(roots[j]))):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(roots[i])
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    return sorted(out, key=lambda cm: (round(cm[0].real, 9), round(cm[0].imag, 9)))
