# eqnv/convexcore/lp.py
"""Exact two-phase simplex over the rationals.

Solves   maximize c.x   subject to   A.x = b,  x >= 0
with Fraction arithmetic throughout. Entering and leaving variables follow
Bland's rule (smallest index), so the method terminates and every result is
reproducible.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from eqnv.core.errors import LinearProgramError, ValidationError

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

MAX_PIVOTS = 200000


@dataclass
class LPResult:
    """Outcome of solve_lp."""
    status: str
    x: Optional[List[Fraction]] = None
    objective: Optional[Fraction] = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    """Dense tableau in basis-inverse-applied form: rows[i] . x = rhs[i]."""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, col: int) -> None:
        pivot_row = self.rows[r]
        p = pivot_row[col]
        if p == 0:
            raise LinearProgramError("Pivot on a zero entry.", {"row": r, "column": col})
        if p != 1:
            self.rows[r] = pivot_row = [a / p for a in pivot_row]
            self.rhs[r] = self.rhs[r] / p
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[col]
            if f != 0:
                self.rows[i] = [a - f * b for a, b in zip(row, pivot_row)]
                self.rhs[i] = self.rhs[i] - f * self.rhs[r]
        self.basis[r] = col
        self.pivots += 1
        if self.pivots > MAX_PIVOTS:
            raise LinearProgramError("Pivot limit exceeded.", {"pivots": self.pivots})

    def reduced_costs(self, cost: Sequence[Fraction], ncols: int) -> List[Fraction]:
        reduced = list(cost[:ncols])
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb != 0:
                for j in range(ncols):
                    if row[j] != 0:
                        reduced[j] -= cb * row[j]
        return reduced

    def optimize(self, cost: Sequence[Fraction], ncols: int) -> str:
        """Runs simplex iterations with Bland's rule on columns < ncols."""
        while True:
            reduced = self.reduced_costs(cost, ncols)
            entering = next((j for j in range(ncols) if reduced[j] > 0 and j not in self.basis), None)
            if entering is None:
                return OPTIMAL
            leaving = None
            best_ratio: Optional[Fraction] = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[leaving])
                    ):
                        best_ratio = ratio
                        leaving = i
            if leaving is None:
                return UNBOUNDED
            self.pivot(leaving, entering)

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), Fraction(0))


def solve_lp(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> LPResult:
    """Maximizes c.x subject to A.x = b and x >= 0, exactly.

    Args:
        c: objective coefficients (length n).
        A: constraint matrix (m rows of length n).
        b: right-hand side (length m).

    Returns:
        LPResult with status "optimal", "infeasible" or "unbounded"; for an
        optimal result `x` is a basic optimal solution.
    """
    n = len(c)
    m = len(A)
    if len(b) != m or any(len(row) != n for row in A):
        raise ValidationError("Inconsistent linear program shape.", {"rows": m, "columns": n})

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for i in range(m):
        row = [Fraction(a) for a in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-a for a in row]
            bi = -bi
        artificial = [Fraction(1 if k == i else 0) for k in range(m)]
        rows.append(row + artificial)
        rhs.append(bi)

    tableau = _Tableau(rows, rhs, [n + i for i in range(m)])

    # Phase 1: minimize the sum of artificials.
    phase1_cost = [Fraction(0)] * n + [Fraction(-1)] * m
    status = tableau.optimize(phase1_cost, n + m)
    if status != OPTIMAL:
        raise LinearProgramError("Phase 1 cannot be unbounded.")
    if tableau.value(phase1_cost) < 0:
        logger.debug("LP infeasible after %d pivots (m=%d, n=%d)", tableau.pivots, m, n)
        return LPResult(status=INFEASIBLE, pivots=tableau.pivots)

    # Drive remaining (zero-level) artificials out of the basis; drop redundant rows.
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= n:
            col = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if col is None:
                del tableau.rows[i]
                del tableau.rhs[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, col)
        i += 1
    tableau.rows = [row[:n] for row in tableau.rows]

    # Phase 2.
    cost = [Fraction(a) for a in c]
    status = tableau.optimize(cost, n)
    if status == UNBOUNDED:
        logger.debug("LP unbounded after %d pivots", tableau.pivots)
        return LPResult(status=UNBOUNDED, pivots=tableau.pivots)

    x = [Fraction(0)] * n
    for r, var in enumerate(tableau.basis):
        x[var] = tableau.rhs[r]
    objective = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    logger.debug("LP optimal after %d pivots (m=%d, n=%d), objective %s", tableau.pivots, m, n, objective)
    return LPResult(status=OPTIMAL, x=x, objective=objective, pivots=tableau.pivots)
