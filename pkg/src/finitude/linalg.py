"""Exact linear algebra over Q and Q(i).

Entries may be ``Fraction`` or :class:`~finitude.scalars.Gaussian`; nothing
here relies on more than field operations and equality with zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


def rank(rows: Sequence[Mapping[object, object]]) -> int:
    """Rank of a sparse matrix given as a list of {column: value} rows."""
    pivots: dict = {}  # column -> reduced row with leading entry 1 at that column
    r = 0
    for row in rows:
        v = {k: x for k, x in row.items() if x}
        while v:
            col = min(v)
            p = pivots.get(col)
            if p is None:
                lead = v[col]
                pivots[col] = {k: x / lead for k, x in v.items()}
                r += 1
                break
            f = v[col]
            for k, x in p.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return r


def solve(matrix: Sequence[Sequence], rhs: Sequence):
    """Solve a square nonsingular system exactly; raises ValueError if singular."""
    n = len(matrix)
    M = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ValueError("singular system")
        M[col], M[piv] = M[piv], M[col]
        lead = M[col][col]
        M[col] = [x / lead for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def independent_subset(vectors: Sequence[Mapping]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedily in input order."""
    chosen = []
    basis: list = []
    current = 0
    for i, v in enumerate(vectors):
        r = rank(basis + [v])
        if r > current:
            basis.append(v)
            chosen.append(i)
            current = r
    return chosen


def hermitian_psd(matrix: Sequence[Sequence]) -> tuple[bool, bool]:
    """Decide whether a Hermitian matrix is positive semidefinite / definite.

    Symmetric Gaussian elimination with positive pivots; a negative or zero
    pivot with a nonzero row certifies failure.  Returns ``(psd, pd)``.
    """
    n = len(matrix)
    M = [list(row) for row in matrix]
    active = list(range(n))
    pd = True
    while active:
        diag = {i: _real(M[i][i]) for i in active}
        if any(d < 0 for d in diag.values()):
            return False, False
        positive = [i for i in active if diag[i] > 0]
        if not positive:
            if any(M[i][j] for i in active for j in active):
                return False, False
            return True, False
        zero_rows = [i for i in active if diag[i] == 0]
        for i in zero_rows:
            if any(M[i][j] for j in active):
                return False, False
        if zero_rows:
            pd = False
            active = [i for i in active if i not in zero_rows]
            continue
        k = positive[0]
        pivot = M[k][k]
        rest = [i for i in active if i != k]
        for i in rest:
            f = M[i][k] / pivot
            if f:
                for j in rest:
                    M[i][j] = M[i][j] - f * M[k][j]
        active = rest
    return True, pd


def _real(x) -> Fraction:
    if hasattr(x, "im"):
        if x.im:
            raise ValueError("diagonal of a Hermitian matrix must be real")
        return x.re
    return Fraction(x)
