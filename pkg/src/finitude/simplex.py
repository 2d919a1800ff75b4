"""Exact two-phase simplex over the rationals.

Solves ``minimize c.x  subject to  A x = b, x >= 0`` with Bland's rule, so
it terminates on degenerate problems.  All arithmetic is in ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction]
    x: Optional[tuple]
    pivots: int


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, c):
        row = self.rows[r]
        lead = row[c]
        if lead != 1:
            inv = 1 / lead
            self.rows[r] = row = [x * inv for x in row]
            self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    self.rows[i] = [a - f * b if b else a for a, b in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost):
        red = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                red = [rc - cb * x if x else rc for rc, x in zip(red, row)]
        return red

    def run(self, cost, allowed) -> str:
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] < 0), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def linprog_eq(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    c = [Fraction(x) for x in c]
    m = len(A)
    n = len(c)
    rows, rhs = [], []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row + [Fraction(int(k == i)) for k in range(m)])
        rhs.append(bi)
    T = _Tableau(rows, rhs, [n + i for i in range(m)])

    # phase 1
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    T.run(phase1, range(n + m))
    if sum(T.rhs[i] for i, bv in enumerate(T.basis) if bv >= n) != 0:
        return LPResult("infeasible", None, None, T.pivots)
    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T.rows):
        if T.basis[i] >= n:
            col = next((j for j in range(n) if T.rows[i][j]), None)
            if col is None:
                del T.rows[i], T.rhs[i], T.basis[i]
                continue
            T.pivot(i, col)
        i += 1

    # phase 2 on the original columns only
    cost = c + [Fraction(0)] * m
    status = T.run(cost, range(n))
    if status == "unbounded":
        return LPResult("unbounded", None, None, T.pivots)
    x = [Fraction(0)] * n
    for i, bv in enumerate(T.basis):
        x[bv] = T.rhs[i]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", value, tuple(x), T.pivots)
