"""Optimal Bayesian persuasion through the obedience linear program."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exact_lp import EQ, GE, LinearProgram, solve_lp
from .game import (
    ContingentPlan,
    PersuasionGame,
    SignalStructure,
    joint_prior,
    sender_value,
)

ZERO = Fraction(0)


@dataclass(frozen=True)
class BayesianSolution:
    value: Fraction
    direct_signal: SignalStructure
    obedient_plan: ContingentPlan
    recommendations: tuple  # action index behind each direct message
    posteriors: tuple
    message_weights: tuple


def obedience_lp(game: PersuasionGame) -> LinearProgram:
    """LP over ``q(state, action)`` (flattened ``state * n_actions + action``).

    Rows: each state's mass equals its prior; for every recommended action
    ``a`` and deviation ``b`` the receiver weakly prefers obeying. Objective:
    the sender's expected payoff.
    """
    n_s, n_a = game.n_states, game.n_actions
    u_r, u_s = game.receiver_payoff, game.sender_payoff
    n = n_s * n_a
    rows = []
    for w in range(n_s):
        coeffs = [0] * n
        for a in range(n_a):
            coeffs[w * n_a + a] = 1
        rows.append((coeffs, EQ, game.prior[w]))
    for a in range(n_a):
        for b in range(n_a):
            if a == b:
                continue
            coeffs = [0] * n
            for w in range(n_s):
                coeffs[w * n_a + a] = u_r[a][w] - u_r[b][w]
            rows.append((coeffs, GE, 0))
    objective = [u_s[a][w] for w in range(n_s) for a in range(n_a)]
    return LinearProgram(objective, rows)


def direct_signal(game: PersuasionGame, q) -> tuple:
    """Turn an obedience-LP point into a direct signal and its obedient plan.

    Returns ``(signal, plan, recommendations)``; unrecommended actions are
    dropped from the message list.
    """
    n_s, n_a = game.n_states, game.n_actions
    used = [a for a in range(n_a) if any(q[w * n_a + a] for w in range(n_s))]
    kernel = [[q[w * n_a + a] / game.prior[w] for a in used] for w in range(n_s)]
    signal = SignalStructure([game.actions[a] for a in used], kernel)
    plan = ContingentPlan.pure(used, n_a)
    return signal, plan, tuple(used)


def solve_bayesian(game: PersuasionGame) -> BayesianSolution:
    lp = obedience_lp(game)
    sol = solve_lp(lp)
    if not sol.optimal:
        # Recommending a prior-optimal action always is feasible and payoffs are bounded.
        raise RuntimeError(f"obedience LP reported {sol.status}")
    signal, plan, used = direct_signal(game, sol.primal)
    joint = joint_prior(game, signal)
    value = sender_value(game, joint, plan)
    if value != sol.value:
        raise RuntimeError("direct signal value disagrees with the LP optimum")
    return BayesianSolution(
        value=value,
        direct_signal=signal,
        obedient_plan=plan,
        recommendations=used,
        posteriors=tuple(joint.posterior(m) for m in range(signal.n_messages)),
        message_weights=joint.message_weights,
    )


def _message_index(signal: SignalStructure, m) -> int:
    if isinstance(m, int):
        if not 0 <= m < signal.n_messages:
            raise InputError(f"message index {m} out of range")
        return m
    try:
        return signal.messages.index(str(m))
    except ValueError:
        raise InputError(f"unknown message {m!r}") from None


def posterior(game: PersuasionGame, signal: SignalStructure, m) -> tuple:
    """Posterior over states after message ``m`` (label or index)."""
    return joint_prior(game, signal).posterior(_message_index(signal, m))


def _column_payoffs(payoff, table, m):
    return [sum((u[w] * table[w][m] for w in range(len(table))), ZERO) for u in payoff]


def receiver_argmax(game: PersuasionGame, table, m) -> list:
    """Receiver-optimal actions at message ``m`` of a joint table (ascending)."""
    values = _column_payoffs(game.receiver_payoff, table, m)
    best = max(values)
    return [a for a, v in enumerate(values) if v == best]


def best_response(game: PersuasionGame, signal: SignalStructure) -> ContingentPlan:
    """Message-wise pure receiver best response, ties broken toward the sender.

    Remaining ties go to the lowest action index.
    """
    table = joint_prior(game, signal).table
    choices = []
    for m in range(signal.n_messages):
        candidates = receiver_argmax(game, table, m)
        sender = _column_payoffs(game.sender_payoff, table, m)
        choices.append(max(candidates, key=lambda a: (sender[a], -a)))
    return ContingentPlan.pure(choices, game.n_actions)


def is_best_response(game: PersuasionGame, table, plan: ContingentPlan) -> bool:
    """True iff at every sent message the plan only uses receiver-optimal actions."""
    for m, row in enumerate(plan.rows):
        if not any(table[w][m] for w in range(len(table))):
            continue
        best = set(receiver_argmax(game, table, m))
        if any(p and a not in best for a, p in enumerate(row)):
            return False
    return True
