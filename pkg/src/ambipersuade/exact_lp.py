"""Exact rational linear programming.

A dense two-phase primal simplex using Bland's rule. The tableau is kept
integer-valued with a single shared denominator (fraction-free pivoting), so
every reported number is an exact :class:`fractions.Fraction` and ties are
resolved exactly.

Sign convention for duals (both senses): the Lagrangian identity
``objective = duals @ A + reduced_costs`` holds, and the dual objective
``duals @ b + sum(reduced_cost_j * active bound_j)`` equals the primal value.
For a maximisation the dual of a ``<=`` row is ``>= 0`` and of a ``>=`` row is
``<= 0``; for a minimisation these signs are reversed.
"""

from __future__ import annotations

import math
import numbers
import random
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional

from ._kernel import pivot
from .errors import InputError, PreconditionError

Rational = Fraction

LE, EQ, GE = "<=", "==", ">="
_RELATIONS = {
    "<=": LE, "≤": LE, "le": LE,
    "==": EQ, "=": EQ, "eq": EQ,
    ">=": GE, "≥": GE, "ge": GE,
}

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


def to_rational(value, field: Optional[str] = None) -> Fraction:
    """Convert ints, fractions, ``"p/q"`` strings and finite decimals exactly.

    Binary floats are refused: they rarely mean what they look like.
    """
    if isinstance(value, bool):
        raise InputError(f"expected a number, got {value!r}", field)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(f"binary float {value!r} is inexact; pass it as a string", field)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InputError(f"not a finite number: {value!r}", field)
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {value!r}", field) from None
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    raise InputError(f"expected a number, got {type(value).__name__}", field)


def format_rational(q: Fraction) -> str:
    """Exact string form: ``"3"`` or ``"-3/4"``."""
    return str(q)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    bound: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` the objective subject to constraints and per-variable bounds.

    ``constraints`` items may be :class:`Constraint` or ``(coeffs, relation,
    bound)`` triples. ``bounds`` defaults to ``(0, None)`` for every variable;
    ``None`` means unbounded on that side.
    """

    objective: tuple
    constraints: tuple = ()
    bounds: Optional[tuple] = None
    sense: str = "max"

    def __post_init__(self):
        objective = tuple(to_rational(v, f"objective[{j}]") for j, v in enumerate(self.objective))
        n = len(objective)
        if n == 0:
            raise InputError("objective must have at least one variable")
        constraints = []
        for i, con in enumerate(self.constraints):
            if isinstance(con, Constraint):
                coeffs, rel, bound = con.coeffs, con.relation, con.bound
            else:
                try:
                    coeffs, rel, bound = con
                except (TypeError, ValueError):
                    raise InputError("expected (coeffs, relation, bound)", f"constraints[{i}]") from None
            if len(coeffs) != n:
                raise InputError(f"row has {len(coeffs)} coefficients, objective has {n}",
                                 f"constraints[{i}]")
            if rel not in _RELATIONS:
                raise InputError(f"unknown relation {rel!r}", f"constraints[{i}]")
            constraints.append(Constraint(
                tuple(to_rational(v, f"constraints[{i}][{j}]") for j, v in enumerate(coeffs)),
                _RELATIONS[rel],
                to_rational(bound, f"constraints[{i}].bound"),
            ))
        if self.bounds is None:
            bounds = ((Fraction(0), None),) * n
        else:
            if len(self.bounds) != n:
                raise InputError(f"{len(self.bounds)} bounds for {n} variables", "bounds")
            bounds = tuple(
                (None if lo is None else to_rational(lo, f"bounds[{j}].lower"),
                 None if hi is None else to_rational(hi, f"bounds[{j}].upper"))
                for j, (lo, hi) in enumerate(self.bounds)
            )
        sense = str(self.sense).lower()
        if sense in ("max", "maximize"):
            sense = "max"
        elif sense in ("min", "minimize"):
            sense = "min"
        else:
            raise InputError(f"sense must be 'max' or 'min', got {self.sense!r}", "sense")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraints", tuple(constraints))
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "sense", sense)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def with_constraints(self, extra, objective=None, sense=None) -> "LinearProgram":
        return LinearProgram(
            self.objective if objective is None else objective,
            self.constraints + tuple(extra),
            self.bounds,
            self.sense if sense is None else sense,
        )


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Optional[Fraction] = None
    primal: tuple = ()
    duals: tuple = ()
    reduced_costs: tuple = ()

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _lcm_of_denominators(values) -> int:
    return math.lcm(*(v.denominator for v in values)) if values else 1


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` exactly. The optimal primal is a basic feasible solution."""
    if not isinstance(lp, LinearProgram):
        raise InputError("solve_lp expects a LinearProgram")
    is_max = lp.sense == "max"

    # Substitute variables so every standard-form column is >= 0.
    columns = []
    offsets = []
    upper_rows = []
    n_std = 0
    for lo, hi in lp.bounds:
        if lo is not None:
            if hi is not None and hi < lo:
                return LpSolution(INFEASIBLE)
            columns.append(((n_std, 1),))
            offsets.append(lo)
            if hi is not None:
                upper_rows.append((n_std, hi - lo))
            n_std += 1
        elif hi is not None:
            columns.append(((n_std, -1),))
            offsets.append(hi)
            n_std += 1
        else:
            columns.append(((n_std, 1), (n_std + 1, -1)))
            offsets.append(Fraction(0))
            n_std += 2

    raw_rows = []
    for con in lp.constraints:
        a = [Fraction(0)] * n_std
        rhs = con.bound
        for j, aij in enumerate(con.coeffs):
            if aij:
                rhs -= aij * offsets[j]
                for k, s in columns[j]:
                    a[k] += s * aij
        raw_rows.append((a, con.relation, rhs))
    for k, ub in upper_rows:
        a = [Fraction(0)] * n_std
        a[k] = Fraction(1)
        raw_rows.append((a, LE, ub))

    c_std = [Fraction(0)] * n_std
    for j, cj in enumerate(lp.objective):
        for k, s in columns[j]:
            c_std[k] += s * cj if is_max else -s * cj

    # Integer rows with rhs >= 0; remember the signed scale of each row.
    m = len(raw_rows)
    int_rows, relations, scales = [], [], []
    for a, rel, rhs in raw_rows:
        scale = _lcm_of_denominators(a + [rhs])
        if rhs < 0 or (rhs == 0 and rel == GE):
            scale = -scale
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        int_rows.append([int(v * scale) for v in a] + [int(rhs * scale)])
        relations.append(rel)
        scales.append(scale)

    # Auxiliary columns: every row gets a +unit column (slack or artificial).
    n_cols = n_std
    unit_col, is_art = [], [False] * n_std
    aux = []  # (row, column, coefficient)
    for i, rel in enumerate(relations):
        if rel == LE:
            aux.append((i, n_cols, 1))
            is_art.append(False)
        else:
            if rel == GE:
                aux.append((i, n_cols, -1))
                is_art.append(False)
                n_cols += 1
            aux.append((i, n_cols, 1))
            is_art.append(True)
        unit_col.append(n_cols)
        n_cols += 1

    rows = []
    for i, r in enumerate(int_rows):
        row = r[:-1] + [0] * (n_cols - n_std) + [r[-1]]
        rows.append(row)
    for i, col, coef in aux:
        rows[i][col] = coef
    basis = list(unit_col)

    obj_scale = _lcm_of_denominators(c_std)
    rows.append([int(-v * obj_scale) for v in c_std] + [0] * (n_cols - n_std + 1))
    obj = m

    d = 1
    art_rows = [i for i in range(m) if is_art[unit_col[i]]]
    allowed = [j for j in range(n_cols) if not is_art[j]]
    if art_rows:
        phase1 = [0] * (n_cols + 1)
        for i in art_rows:
            for j, v in enumerate(rows[i]):
                phase1[j] -= v
        phase1 = [0 if (j < n_cols and is_art[j]) else v for j, v in enumerate(phase1)]
        rows.append(phase1)
        status, d = _run(rows, basis, d, m + 1, allowed, m, n_cols)
        if rows[m + 1][n_cols] < 0:
            return LpSolution(INFEASIBLE)
        rows.pop()
        # Drive zero-level artificials out of the basis where possible; a row
        # where that is impossible is redundant and inert for phase 2.
        for i in range(m):
            if is_art[basis[i]]:
                row = rows[i]
                k = next((k for k in allowed if row[k] != 0), None)
                if k is not None:
                    d = pivot(rows, i, k, d)
                    basis[i] = k

    status, d = _run(rows, basis, d, obj, allowed, m, n_cols)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED)

    x_std = [Fraction(0)] * n_std
    for i, col in enumerate(basis):
        if col < n_std:
            x_std[col] = Fraction(rows[i][n_cols], d)
    primal = tuple(offsets[j] + sum(s * x_std[k] for k, s in columns[j]) for j in range(lp.n_vars))
    value = sum((c * x for c, x in zip(lp.objective, primal)), Fraction(0))

    sign = 1 if is_max else -1
    denom = d * obj_scale
    duals = tuple(
        sign * scales[i] * Fraction(rows[obj][unit_col[i]], denom) for i in range(len(lp.constraints))
    )
    reduced = tuple(
        lp.objective[j] - sum(duals[i] * con.coeffs[j] for i, con in enumerate(lp.constraints))
        for j in range(lp.n_vars)
    )
    return LpSolution(OPTIMAL, value, primal, duals, reduced)


def _run(rows, basis, d, obj, allowed, m, rhs):
    """Bland's-rule primal simplex on ``rows`` until optimal or unbounded."""
    while True:
        objrow = rows[obj]
        enter = next((j for j in allowed if objrow[j] < 0), None)
        if enter is None:
            return OPTIMAL, d
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                if best is None:
                    best, ba, bb = i, a, rows[i][rhs]
                    continue
                b = rows[i][rhs]
                lhs, rhs_val = b * ba, bb * a
                if lhs < rhs_val or (lhs == rhs_val and basis[i] < basis[best]):
                    best, ba, bb = i, a, b
        if best is None:
            return UNBOUNDED, d
        d = pivot(rows, best, enter, d)
        basis[best] = enter


def dual_objective(lp: LinearProgram, sol: LpSolution) -> Optional[Fraction]:
    """Dual objective of ``sol``'s multipliers, or ``None`` if they are dual infeasible.

    Equal to ``sol.value`` whenever ``sol`` is optimal (strong duality).
    """
    if not sol.optimal:
        raise PreconditionError("dual objective needs an optimal solution")
    total = sum((y * con.bound for y, con in zip(sol.duals, lp.constraints)), Fraction(0))
    favour = 1 if lp.sense == "max" else -1
    for r, (lo, hi) in zip(sol.reduced_costs, lp.bounds):
        if r * favour > 0:
            if hi is None:
                return None
            total += r * hi
        elif r * favour < 0:
            if lo is None:
                return None
            total += r * lo
    return total


def certificate_violations(lp: LinearProgram, sol: LpSolution) -> list:
    """Exact optimality audit: primal feasibility, dual signs, complementary slackness."""
    problems = []
    if not sol.optimal:
        return [f"status is {sol.status}"]
    x = sol.primal
    favour = 1 if lp.sense == "max" else -1
    for j, ((lo, hi), xj) in enumerate(zip(lp.bounds, x)):
        if lo is not None and xj < lo or hi is not None and xj > hi:
            problems.append(f"x[{j}] = {xj} outside bounds")
    for i, (con, y) in enumerate(zip(lp.constraints, sol.duals)):
        lhs = sum((a * v for a, v in zip(con.coeffs, x)), Fraction(0))
        slack = con.bound - lhs
        if con.relation == LE and slack < 0 or con.relation == GE and slack > 0 \
                or con.relation == EQ and slack != 0:
            problems.append(f"row {i} violated: {lhs} {con.relation} {con.bound}")
        if con.relation == LE and y * favour < 0 or con.relation == GE and y * favour > 0:
            problems.append(f"row {i} dual {y} has the wrong sign")
        if y != 0 and slack != 0:
            problems.append(f"row {i}: dual {y} on a slack row")
    for j, (r, (lo, hi), xj) in enumerate(zip(sol.reduced_costs, lp.bounds, x)):
        if r * favour > 0 and xj != hi or r * favour < 0 and xj != lo:
            problems.append(f"x[{j}] = {xj} not at the bound its reduced cost {r} requires")
    if dual_objective(lp, sol) != sol.value:
        problems.append("dual objective differs from primal value")
    return problems


def optimal_face_vertices(lp: LinearProgram, budget: int = 16, seed: int = 0) -> list:
    """Distinct vertices of the optimal face of ``lp``.

    The optimum is pinned with an equality row and up to ``budget`` secondary
    objectives are maximised over the face: coordinate directions ``+e_j``,
    ``-e_j`` first, then seeded random integer directions. The vertex returned
    by :func:`solve_lp` always comes first.
    """
    sol = solve_lp(lp)
    if not sol.optimal:
        raise PreconditionError(f"optimal face of a {sol.status} LP")
    n = lp.n_vars
    face = lp.with_constraints([(lp.objective, EQ, sol.value)])
    directions = []
    for j in range(n):
        for s in (1, -1):
            e = [0] * n
            e[j] = s
            directions.append(e)
    rng = random.Random(seed)
    while len(directions) < budget:
        directions.append([rng.randint(-4, 4) for _ in range(n)])
    found = [sol.primal]
    seen = {sol.primal}
    for direction in directions[:max(budget, 0)]:
        sub = solve_lp(LinearProgram(direction, face.constraints, face.bounds, "max"))
        if sub.optimal and sub.primal not in seen:
            seen.add(sub.primal)
            found.append(sub.primal)
    return found


__all__ = [
    "Rational", "LE", "EQ", "GE", "OPTIMAL", "INFEASIBLE", "UNBOUNDED",
    "to_rational", "format_rational", "Constraint", "LinearProgram", "LpSolution",
    "solve_lp", "dual_objective", "certificate_violations", "optimal_face_vertices",
]
