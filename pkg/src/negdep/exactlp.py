"""Exact rational linear algebra and feasibility, used for coupling problems.

Everything here works over `fractions.Fraction`: Gaussian elimination, a
phase-1 simplex (Bland's rule, so it terminates) deciding whether
``A x = b, x >= 0`` has a solution, and enumeration of all vertices of such a
polytope by walking basis subsets.  No floating-point solver is acceptable
for this library's verdicts, and no exact-rational LP lives in the standard
ecosystem, hence the small hand-rolled kernel.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .errors import TooLarge

ZERO = Fraction(0)
ONE = Fraction(1)

__all__ = ["rank", "solve_unique", "nonneg_solve", "polytope_vertices"]

Matrix = list[list[Fraction]]


def _rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    return len(_rref(rows)[1])


def solve_unique(rows: Matrix, rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve A x = b when the solution is unique; None if none or not unique."""
    if not rows:
        return [] if not rhs else None
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    red, pivots = _rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:  # pivot in the rhs column: inconsistent
        return None
    if len(pivots) < ncols:  # free columns: not unique
        return None
    x = [ZERO] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def nonneg_solve(rows: Matrix, rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Find any x >= 0 with A x = b (phase-1 simplex, Bland's rule), else None."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    tab: Matrix = []
    for row, b in zip(rows, rhs):
        if b < 0:
            row = [-v for v in row]
            b = -b
        tab.append([Fraction(v) for v in row] + [ZERO] * m + [Fraction(b)])
    for i in range(m):
        tab[i][n + i] = ONE
    basis = [n + i for i in range(m)]
    # phase-1 objective: minimise the sum of artificial variables
    cost = [ZERO] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            cost[j] -= tab[i][j]
        cost[-1] -= tab[i][-1]
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (
                    ratio == best[0] and basis[i] < basis[best[1]]
                ):
                    best = (ratio, i)
        if best is None:  # cannot happen: phase-1 objective is bounded below
            return None
        _, leave = best
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter
    if -cost[-1] != 0:  # leftover artificial mass: infeasible
        return None
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    return x


def polytope_vertices(
    rows: Matrix, rhs: Sequence[Fraction], budget: int
) -> list[tuple[Fraction, ...]]:
    """All vertices of {x >= 0 : A x = b}, by enumerating basis column subsets.

    Raises :class:`TooLarge` when C(n, rank) exceeds the budget.  Returns
    deduplicated vertices in sorted order (empty when infeasible).
    """
    if not rows:
        return [()]
    n = len(rows[0])
    r = rank(rows)
    if rank([row[:] + [b] for row, b in zip(rows, rhs)]) != r:
        return []
    if comb(n, r) > budget:
        raise TooLarge(
            f"{comb(n, r)} basis subsets exceed the budget of {budget}"
        )
    seen: set[tuple[Fraction, ...]] = set()
    for cols in itertools.combinations(range(n), r):
        sub = [[row[c] for c in cols] for row in rows]
        sol = solve_unique(sub, list(rhs))
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [ZERO] * n
        for c, v in zip(cols, sol):
            x[c] = v
        seen.add(tuple(x))
    return sorted(seen)
