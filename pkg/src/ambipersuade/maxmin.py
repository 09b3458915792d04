"""The receiver's ex-ante maxmin program and saddle-point certificates.

Plan variables are flattened as ``message * n_actions + action``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bayes import receiver_argmax
from .errors import InputError, PreconditionError
from .exact_lp import EQ, GE, Constraint, LinearProgram, solve_lp, to_rational
from .game import (
    AmbiguousSignal,
    ContingentPlan,
    JointPrior,
    PersuasionGame,
    mix_joints,
    receiver_value,
    receiver_value_ambiguous,
    sender_value_alpha,
    vertex_joints,
)

ZERO = Fraction(0)


def plan_coefficients(payoff, joint: JointPrior) -> list:
    """Coefficient of ``f(m)(a)`` in the expected payoff under ``joint``."""
    table = joint.table
    n_s, n_m = len(table), len(table[0])
    return [
        sum((payoff[a][w] * table[w][m] for w in range(n_s)), ZERO)
        for m in range(n_m)
        for a in range(len(payoff))
    ]


def _stochastic_rows(n_m, n_a, width):
    rows = []
    for m in range(n_m):
        coeffs = [0] * width
        for a in range(n_a):
            coeffs[m * n_a + a] = 1
        rows.append(Constraint(tuple(Fraction(c) for c in coeffs), EQ, Fraction(1)))
    return rows


def maxmin_lp(game: PersuasionGame, ambig: AmbiguousSignal) -> LinearProgram:
    """``max t  s.t.  V_R(pi_j, f) >= t for every vertex j, f row-stochastic``.

    The first ``len(ambig.vertices)`` rows are the vertex rows; their duals
    are the (negated) worst-case mixture weights.
    """
    n_m, n_a = ambig.n_messages, game.n_actions
    n = n_m * n_a
    rows = [
        (plan_coefficients(game.receiver_payoff, j) + [-1], GE, 0)
        for j in vertex_joints(game, ambig)
    ]
    rows += _stochastic_rows(n_m, n_a, n + 1)
    bounds = [(0, None)] * n + [(None, None)]
    return LinearProgram([0] * n + [1], rows, bounds, "max")


def _plan_from_vector(x, n_m, n_a) -> ContingentPlan:
    return ContingentPlan(tuple(tuple(x[m * n_a:(m + 1) * n_a]) for m in range(n_m)))


@dataclass(frozen=True)
class MaxminSolution:
    value: Fraction
    plan: ContingentPlan
    alpha: Fraction
    sender_value: Fraction  # alpha-MEU value of ``plan``
    optimal_plan_constraints: tuple = field(repr=False)
    mixture: tuple = ()

    def is_optimal_plan(self, plan: ContingentPlan) -> bool:
        """Exact membership test for the set of maxmin-optimal plans."""
        x = [v for row in plan.rows for v in row]
        if any(v < 0 for v in x):
            return False
        for con in self.optimal_plan_constraints:
            lhs = sum((a * v for a, v in zip(con.coeffs, x)), ZERO)
            if con.relation == GE and lhs < con.bound or con.relation == EQ and lhs != con.bound:
                return False
        return True


def solve_receiver_maxmin(game: PersuasionGame, ambig: AmbiguousSignal, alpha=1) -> MaxminSolution:
    """Receiver's maxmin value and the plan an alpha-MEU sender prefers among his optima.

    The sender's objective ``alpha * min_j V_S + (1 - alpha) * max_j V_S`` is
    maximised over the optimal-plan polytope by guessing the maximising
    vertex ``j*``: one LP per vertex, best ``j*`` wins (lowest index on ties).
    """
    alpha = to_rational(alpha, "alpha")
    if not 0 <= alpha <= 1:
        raise InputError(f"alpha must lie in [0, 1], got {alpha}", "alpha")
    n_m, n_a = ambig.n_messages, game.n_actions
    n = n_m * n_a
    joints = vertex_joints(game, ambig)

    base = solve_lp(maxmin_lp(game, ambig))
    if not base.optimal:
        raise RuntimeError(f"maxmin LP reported {base.status}")
    t_star = base.value
    mixture = tuple(-y for y in base.duals[:len(joints)])

    optimal_rows = [
        Constraint(tuple(plan_coefficients(game.receiver_payoff, j)), GE, t_star) for j in joints
    ] + _stochastic_rows(n_m, n_a, n)

    # Variables (f, t_S): V_R(pi_j, f) >= t*, stochastic rows, V_S(pi_j, f) >= t_S.
    sender_coeffs = [plan_coefficients(game.sender_payoff, j) for j in joints]
    rows = [(list(c.coeffs) + [0], c.relation, c.bound) for c in optimal_rows]
    rows += [(s + [-1], GE, 0) for s in sender_coeffs]
    bounds = [(0, None)] * n + [(None, None)]

    candidates = [0] if alpha == 1 else range(len(joints))
    best = None
    for j_star in candidates:
        objective = [(1 - alpha) * c for c in sender_coeffs[j_star]] + [alpha]
        sol = solve_lp(LinearProgram(objective, rows, bounds, "max"))
        if not sol.optimal:
            raise RuntimeError(f"sender tie-break LP reported {sol.status}")
        if best is None or sol.value > best.value:
            best = sol
    plan = _plan_from_vector(best.primal[:n], n_m, n_a)

    value = receiver_value_ambiguous(game, ambig, plan)
    if value != t_star:
        raise RuntimeError("selected plan is not maxmin-optimal")
    return MaxminSolution(
        value=t_star,
        plan=plan,
        alpha=alpha,
        sender_value=sender_value_alpha(game, ambig, plan, alpha),
        optimal_plan_constraints=tuple(optimal_rows),
        mixture=mixture,
    )


@dataclass(frozen=True)
class MinimaxDual:
    """Value and minimising mixture of ``min_lambda max_f V_R(sum_j lambda_j pi_j, f)``."""

    value: Fraction
    mixture: tuple


def solve_mixture_minmax(game: PersuasionGame, ambig: AmbiguousSignal) -> MinimaxDual:
    """Solve the min-over-mixtures side directly, as its own LP.

    Variables: ``lambda_j >= 0`` then one free ``mu_m`` per message bounding
    the best response payoff at that message.
    """
    joints = vertex_joints(game, ambig)
    k, n_m, n_a = len(joints), ambig.n_messages, game.n_actions
    coeffs = [plan_coefficients(game.receiver_payoff, j) for j in joints]
    rows = [([1] * k + [0] * n_m, EQ, 1)]
    for m in range(n_m):
        for a in range(n_a):
            row = [-coeffs[j][m * n_a + a] for j in range(k)] + [0] * n_m
            row[k + m] = 1
            rows.append((row, GE, 0))
    bounds = [(0, None)] * k + [(None, None)] * n_m
    sol = solve_lp(LinearProgram([0] * k + [1] * n_m, rows, bounds, "min"))
    if not sol.optimal:
        raise RuntimeError(f"mixture LP reported {sol.status}")
    return MinimaxDual(sol.value, tuple(sol.primal[:k]))


@dataclass(frozen=True)
class SaddleCertificate:
    mixture: tuple
    worst_joint: JointPrior


@dataclass(frozen=True)
class SaddleVerdict:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


def find_saddle(game: PersuasionGame, ambig: AmbiguousSignal, plan: ContingentPlan) -> SaddleCertificate:
    """Worst-case mixture for a maxmin-optimal ``plan``, read off the maxmin LP duals."""
    sol = solve_lp(maxmin_lp(game, ambig))
    if len(plan.rows) != ambig.n_messages:
        raise InputError("plan and ambiguous signal disagree on the number of messages")
    if receiver_value_ambiguous(game, ambig, plan) != sol.value:
        raise PreconditionError("plan is not maxmin-optimal for this ambiguous signal")
    joints = vertex_joints(game, ambig)
    mixture = tuple(-y for y in sol.duals[:len(joints)])
    cert = SaddleCertificate(mixture, mix_joints(joints, mixture))
    verdict = verify_saddle(game, ambig, plan, cert)
    if not verdict:
        raise RuntimeError(f"dual mixture failed saddle verification: {verdict.violations}")
    return cert


def verify_saddle(game: PersuasionGame, ambig: AmbiguousSignal, plan: ContingentPlan,
                  cert: SaddleCertificate) -> SaddleVerdict:
    """Exact check that ``(plan, cert.worst_joint)`` is a saddle point.

    (i) at every message the worst joint sends, the plan only uses receiver
    best responses; (ii) the worst joint attains the plan's worst-case value.
    """
    joints = vertex_joints(game, ambig)
    problems = []
    if len(cert.mixture) != len(joints):
        return SaddleVerdict(False, (f"mixture has {len(cert.mixture)} weights for {len(joints)} vertices",))
    if any(w < 0 for w in cert.mixture) or sum(cert.mixture, ZERO) != 1:
        problems.append("mixture is not a probability vector")
    elif mix_joints(joints, cert.mixture) != cert.worst_joint:
        problems.append("worst_joint is not the stated mixture of vertex joints")
    table = cert.worst_joint.table
    for m, row in enumerate(plan.rows):
        if not any(table[w][m] for w in range(len(table))):
            continue
        best = set(receiver_argmax(game, table, m))
        bad = [game.actions[a] for a, p in enumerate(row) if p and a not in best]
        if bad:
            problems.append(f"message {ambig.messages[m]}: plan uses non-optimal actions {bad}")
    worst = min(receiver_value(game, j, plan) for j in joints)
    at_cert = receiver_value(game, cert.worst_joint, plan)
    if at_cert != worst:
        problems.append(f"V_R at worst_joint is {at_cert}, worst case over vertices is {worst}")
    return SaddleVerdict(not problems, tuple(problems))
