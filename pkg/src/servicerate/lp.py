"""Exact linear programming over the rationals.

A dense two-phase simplex on `fractions.Fraction`. Pivoting follows Bland's
rule (smallest eligible index enters, smallest basic index breaks ratio
ties), which guarantees termination and makes every solve deterministic:
the same program always yields the same optimal basic solution. Returned
optima are therefore vertices of the feasible polyhedron.

Variables carry a default lower bound of 0; bounds may be reset per
variable. Upper bounds are handled as ordinary rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["LE", "EQ", "GE", "LinearProgram", "LPOutcome", "solve_max", "feasible"]

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

Number = int | Fraction


class LinearProgram:
    """max c.x subject to rows (A_i . x rel b_i) and per-variable bounds."""

    def __init__(self, num_vars: int, objective: Sequence[Number] = ()) -> None:
        if num_vars < 0:
            raise ValueError("number of variables must be nonnegative")
        self.num_vars = num_vars
        if objective:
            self.objective = self._vector(objective)
        else:
            self.objective = [Fraction(0)] * num_vars
        self.rows: list[tuple[list[Fraction], str, Fraction]] = []
        self.lower: list[Optional[Fraction]] = [Fraction(0)] * num_vars
        self.upper: list[Optional[Fraction]] = [None] * num_vars

    def _vector(self, coeffs: Sequence[Number]) -> list[Fraction]:
        if len(coeffs) != self.num_vars:
            raise ValueError(
                f"dimension mismatch: expected {self.num_vars} coefficients, "
                f"got {len(coeffs)}"
            )
        return [Fraction(c) for c in coeffs]

    def add_constraint(self, coeffs: Sequence[Number], relation: str, rhs: Number) -> None:
        if relation not in _RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        self.rows.append((self._vector(coeffs), relation, Fraction(rhs)))

    def set_lower_bound(self, var: int, value: Number) -> None:
        self.lower[var] = Fraction(value)

    def set_upper_bound(self, var: int, value: Number) -> None:
        self.upper[var] = Fraction(value)


@dataclass(frozen=True, slots=True)
class LPOutcome:
    """status is 'optimal', 'infeasible' or 'unbounded'; value and assignment
    are set only when optimal."""

    status: str
    value: Optional[Fraction] = None
    assignment: Optional[tuple[Fraction, ...]] = None


class _Tableau:
    """Standard-form tableau: rows A|b with b >= 0, one basic column per row."""

    def __init__(self, program: LinearProgram) -> None:
        n = program.num_vars
        self.n_struct = n
        # shift x = y + lower so that y >= 0 throughout
        self.shift = [lb if lb is not None else Fraction(0) for lb in program.lower]
        rows: list[tuple[list[Fraction], str, Fraction]] = []
        for coeffs, rel, rhs in program.rows:
            shifted = rhs - sum(c * s for c, s in zip(coeffs, self.shift))
            rows.append((list(coeffs), rel, shifted))
        for j, ub in enumerate(program.upper):
            if ub is None:
                continue
            coeffs = [Fraction(0)] * n
            coeffs[j] = Fraction(1)
            rows.append((coeffs, LE, ub - self.shift[j]))
        # normalize to nonnegative right-hand sides
        normed: list[tuple[list[Fraction], str, Fraction]] = []
        for coeffs, rel, rhs in rows:
            if rhs < 0:
                coeffs = [-c for c in coeffs]
                rhs = -rhs
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
            normed.append((coeffs, rel, rhs))
        n_slack = sum(1 for _, rel, _ in normed if rel != EQ)
        n_art = sum(1 for _, rel, _ in normed if rel != LE)
        self.n_slack = n_slack
        self.n_art = n_art
        width = n + n_slack + n_art
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.basis: list[int] = []
        slack_at = n
        art_at = n + n_slack
        zero = Fraction(0)
        for coeffs, rel, rhs in normed:
            row = coeffs + [zero] * (n_slack + n_art) + [rhs]
            if rel == LE:
                row[slack_at] = Fraction(1)
                self.basis.append(slack_at)
                slack_at += 1
            elif rel == GE:
                row[slack_at] = Fraction(-1)
                slack_at += 1
                row[art_at] = Fraction(1)
                self.basis.append(art_at)
                art_at += 1
            else:
                row[art_at] = Fraction(1)
                self.basis.append(art_at)
                art_at += 1
            self.rows.append(row)

    def _pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = Fraction(1) / row[c]
        self.rows[r] = row = [v * inv for v in row]
        for i, other in enumerate(self.rows):
            if i != r and other[c]:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[r] = c

    def _reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        """Eliminate basic columns from a cost row (cost has width+1 cells)."""
        red = list(cost)
        for r, b in enumerate(self.basis):
            if red[b]:
                f = red[b]
                red = [a - f * v for a, v in zip(red, self.rows[r])]
        return red

    def _run(self, cost: list[Fraction], allowed: int) -> str:
        """Bland-rule simplex on columns [0, allowed); returns final status."""
        red = self._reduced_costs(cost)
        while True:
            enter = next((j for j in range(allowed) if red[j] > 0), None)
            if enter is None:
                return "optimal"
            best_r = -1
            best_ratio: Optional[Fraction] = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[r] < self.basis[best_r])
                    ):
                        best_ratio = ratio
                        best_r = r
            if best_r < 0:
                return "unbounded"
            self._pivot(best_r, enter)
            f = red[enter]
            red = [a - f * v for a, v in zip(red, self.rows[best_r])]

    def phase1(self) -> bool:
        """Drive artificials to zero; False means the program is infeasible."""
        if self.n_art == 0:
            return True
        zero = Fraction(0)
        cost = [zero] * (self.width + 1)
        for j in range(self.n_struct + self.n_slack, self.width):
            cost[j] = Fraction(-1)
        status = self._run(cost, self.width)
        assert status == "optimal"  # phase-1 objective is bounded above by 0
        art_lo = self.n_struct + self.n_slack
        for r in range(len(self.rows)):
            if self.basis[r] >= art_lo and self.rows[r][-1]:
                return False
        # pivot surviving artificials out of the basis, dropping redundant rows
        keep: list[int] = []
        for r in range(len(self.rows)):
            if self.basis[r] < art_lo:
                keep.append(r)
                continue
            col = next(
                (j for j in range(art_lo) if self.rows[r][j]),
                None,
            )
            if col is None:
                continue  # all-zero over real columns: redundant constraint
            self._pivot(r, col)
            keep.append(r)
        kept = set(keep)
        self.rows = [row[:art_lo] + [row[-1]] for i, row in enumerate(self.rows) if i in kept]
        self.basis = [self.basis[i] for i in keep]
        self.width = art_lo
        self.n_art = 0
        return True

    def phase2(self, objective: list[Fraction]) -> str:
        zero = Fraction(0)
        cost = [zero] * (self.width + 1)
        cost[: self.n_struct] = objective
        return self._run(cost, self.width)

    def assignment(self) -> tuple[Fraction, ...]:
        y = [Fraction(0)] * self.n_struct
        for r, b in enumerate(self.basis):
            if b < self.n_struct:
                y[b] = self.rows[r][-1]
        return tuple(v + s for v, s in zip(y, self.shift))


def _bounds_consistent(program: LinearProgram) -> bool:
    for lb, ub in zip(program.lower, program.upper):
        if ub is not None and lb is not None and ub < lb:
            return False
    return True


def solve_max(program: LinearProgram) -> LPOutcome:
    """Maximize the objective; exact, deterministic, vertex-valued."""
    if not _bounds_consistent(program):
        return LPOutcome("infeasible")
    if program.num_vars == 0:
        ok = all(
            (rel == LE and rhs >= 0) or (rel == GE and rhs <= 0) or (rel == EQ and rhs == 0)
            for _, rel, rhs in program.rows
        )
        return LPOutcome("optimal", Fraction(0), ()) if ok else LPOutcome("infeasible")
    tab = _Tableau(program)
    if not tab.phase1():
        return LPOutcome("infeasible")
    status = tab.phase2(list(program.objective))
    if status != "optimal":
        return LPOutcome(status)
    x = tab.assignment()
    value = sum((c * v for c, v in zip(program.objective, x)), Fraction(0))
    return LPOutcome("optimal", value, x)


def feasible(program: LinearProgram) -> Optional[tuple[Fraction, ...]]:
    """A feasible point (a vertex), or None if the constraints are empty."""
    if not _bounds_consistent(program):
        return None
    if program.num_vars == 0:
        ok = all(
            (rel == LE and rhs >= 0) or (rel == GE and rhs <= 0) or (rel == EQ and rhs == 0)
            for _, rel, rhs in program.rows
        )
        return () if ok else None
    tab = _Tableau(program)
    if not tab.phase1():
        return None
    return tab.assignment()
