"""Exact rational simplex for ``max c.x  s.t.  A x = b, x >= 0``.

Two-phase dense tableau with Bland's rule.  Redundant equality rows are
allowed: after phase 1 any artificial variable still basic at level zero is
pivoted out, and rows where that is impossible are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import Infeasible, Unbounded, ValidationError

ZERO = Fraction(0)


@dataclass
class ExactLP:
    objective: list[Fraction]
    eq_rows: list[list[Fraction]] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)

    def __post_init__(self):
        self.objective = [Fraction(c) for c in self.objective]
        self.eq_rows = [[Fraction(a) for a in row] for row in self.eq_rows]
        self.rhs = [Fraction(v) for v in self.rhs]
        if len(self.eq_rows) != len(self.rhs):
            raise ValidationError("one right-hand side per equality row is required")
        if any(len(row) != self.n_vars for row in self.eq_rows):
            raise ValidationError("constraint rows must have one entry per variable")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def residuals(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * v for a, v in zip(row, x) if a), ZERO) - b for row, b in zip(self.eq_rows, self.rhs)]

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        return all(v >= 0 for v in x) and not any(self.residuals(x))


class Tableau:
    """Simplex tableau; ``rows[i][-1]`` is the value of basic variable ``basis[i]``."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], n_cols: int):
        self.rows = rows
        self.basis = basis
        self.n_cols = n_cols
        self.pivots = 0

    def copy(self) -> "Tableau":
        return Tableau([list(r) for r in self.rows], list(self.basis), self.n_cols)

    def pivot(self, r: int, c: int, z: list[Fraction]) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            row[:] = [v / p if v else v for v in row]
        nz = [j for j, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            f = other[c]
            if i != r and f:
                for j in nz:
                    other[j] -= f * row[j]
        f = z[c]
        if f:
            for j in nz:
                z[j] -= f * row[j]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, c: Sequence[Fraction]) -> list[Fraction]:
        """Row ``z`` with ``z[j] = c_j - c_B B^-1 A_j`` and ``z[-1] = -c_B x_B``."""
        z = list(c) + [ZERO]
        z += [ZERO] * (self.n_cols + 1 - len(z))
        for row, bv in zip(self.rows, self.basis):
            cb = c[bv] if bv < len(c) else ZERO
            if cb:
                for j, v in enumerate(row):
                    if v:
                        z[j] -= cb * v
        return z

    def run(self, z: list[Fraction], allowed: int | None = None) -> None:
        """Bland's rule iterations maximizing the objective encoded by ``z``."""
        allowed = self.n_cols if allowed is None else allowed
        while True:
            enter = next((j for j in range(allowed) if z[j] > 0), None)
            if enter is None:
                return
            leave, best = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                raise Unbounded(f"objective unbounded along variable {enter}")
            self.pivot(leave, enter, z)

    def solution(self, n_vars: int) -> list[Fraction]:
        x = [ZERO] * n_vars
        for row, bv in zip(self.rows, self.basis):
            if bv < n_vars:
                x[bv] = row[-1]
        return x


def feasible_tableau(eq_rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], n_vars: int) -> Tableau:
    """Phase 1: a basic feasible tableau over the original variables only."""
    m = len(eq_rows)
    rows = []
    for i, (row, b) in enumerate(zip(eq_rows, rhs)):
        sign = -1 if b < 0 else 1
        art = [ZERO] * m
        art[i] = Fraction(1)
        rows.append([sign * Fraction(a) for a in row] + art + [sign * Fraction(b)])
    tab = Tableau(rows, [n_vars + i for i in range(m)], n_vars + m)
    phase1 = [ZERO] * n_vars + [Fraction(-1)] * m
    z = tab.reduced_costs(phase1)
    tab.run(z)
    if z[-1] != 0:
        raise Infeasible(f"equality system infeasible (phase-1 residual {-z[-1]})")
    keep = []
    for r in range(len(tab.rows)):
        if tab.basis[r] >= n_vars:
            col = next((j for j in range(n_vars) if tab.rows[r][j]), None)
            if col is None:
                continue  # redundant row
            tab.pivot(r, col, z)
        keep.append(r)
    tab.rows = [tab.rows[r][:n_vars] + [tab.rows[r][-1]] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]
    tab.n_cols = n_vars
    return tab


def maximize_from(tab: Tableau, objective: Sequence[Fraction]) -> tuple[Fraction, list[Fraction]]:
    """Phase 2 on a copy of a feasible tableau."""
    work = tab.copy()
    z = work.reduced_costs([Fraction(c) for c in objective])
    work.run(z)
    return -z[-1], work.solution(tab.n_cols)


def lp_solve(lp: ExactLP, sense: str = "max") -> tuple[Fraction, list[Fraction]]:
    """Exact optimum and an optimal vertex of ``lp``."""
    if sense not in ("max", "min"):
        raise ValidationError(f"sense must be 'max' or 'min', got {sense!r}")
    tab = feasible_tableau(lp.eq_rows, lp.rhs, lp.n_vars)
    c = lp.objective if sense == "max" else [-v for v in lp.objective]
    value, x = maximize_from(tab, c)
    return (value if sense == "max" else -value), x
