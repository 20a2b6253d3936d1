"""Exact linear algebra over Q(i) for quotient-ring computations."""

from __future__ import annotations

from typing import List, Optional, Sequence

from ..poly_core import upoly
from ..poly_core.gaussian import ONE, ZERO, GaussianRational

Vector = List[GaussianRational]
Matrix = List[List[GaussianRational]]


class IncrementalEchelon:
    """Row echelon form grown one vector at a time.

    ``add`` returns None when the vector is independent of those seen so far,
    otherwise the coefficients expressing it in terms of them.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: List[Vector] = []      # reduced rows
        self.combo: List[Vector] = []     # each row as a combination of inputs
        self.pivots: List[int] = []
        self.count = 0

    def add(self, v: Sequence[GaussianRational]) -> Optional[Vector]:
        v = list(v)
        c = [ZERO] * (self.count + 1)
        c[self.count] = ONE
        for row, comb, pv in zip(self.rows, self.combo, self.pivots):
            f = v[pv]
            if f.is_zero():
                continue
            for k in range(self.dim):
                if not row[k].is_zero():
                    v[k] = v[k] - f * row[k]
            for k in range(len(comb)):
                if not comb[k].is_zero():
                    c[k] = c[k] - f * comb[k]
        piv = next((k for k in range(self.dim) if not v[k].is_zero()), None)
        self.count += 1
        if piv is None:
            # 0 = c . inputs  =>  input_last = -sum c_k input_k
            return [-x for x in c[:-1]]
        inv = v[piv].inverse()
        row = [x * inv for x in v]
        comb = [x * inv for x in c]
        # keep rows fully reduced at the new pivot
        for idx, (r, cm) in enumerate(zip(self.rows, self.combo)):
            f = r[piv]
            if f.is_zero():
                continue
            self.rows[idx] = [a - f * b for a, b in zip(r, row)]
            ext = cm + [ZERO] * (len(comb) - len(cm))
            self.combo[idx] = [a - f * b for a, b in zip(ext, comb)]
        self.rows.append(row)
        self.combo.append(comb)
        self.pivots.append(piv)
        for idx in range(len(self.combo)):
            self.combo[idx] = self.combo[idx] + [ZERO] * (self.count - len(self.combo[idx]))
        return None


def rank(rows: Sequence[Sequence[GaussianRational]]) -> int:
    if not rows:
        return 0
    ech = IncrementalEchelon(len(rows[0]))
    return sum(1 for r in rows if ech.add(r) is None)


def charpoly(mat: Matrix) -> upoly.UPoly:
    """Characteristic polynomial det(x*I - M), low degree first (Hessenberg method)."""
    n = len(mat)
    h = [list(row) for row in mat]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if not h[i][m - 1].is_zero()), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv = h[m][m - 1].inverse()
        for i in range(m + 1, n):
            u = h[i][m - 1] * inv
            if u.is_zero():
                continue
            for j in range(n):
                h[i][j] = h[i][j] - u * h[m][j]
            for j in range(n):
                h[j][m] = h[j][m] + u * h[j][i]
    polys: List[upoly.UPoly] = [[ONE]]
    for m in range(1, n + 1):
        cur = upoly.mul([-h[m - 1][m - 1], ONE], polys[m - 1])
        t = ONE
        for i in range(m - 1, 0, -1):
            t = t * h[i][i - 1]
            coeff = t * h[i - 1][m - 1]
            if not coeff.is_zero():
                cur = upoly.sub(cur, upoly.scale(polys[i - 1], coeff))
        polys.append(cur)
    return polys[n]
