"""No-gain checks, Pareto-improvability detection and ambiguity-premium certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bayes import direct_signal, is_best_response, obedience_lp, solve_bayesian
from .errors import InputError, PreconditionError, GuaranteeViolation
from .exact_lp import EQ, GE, LinearProgram, optimal_face_vertices, solve_lp, to_rational
from .game import (
    AmbiguousSignal,
    ContingentPlan,
    PersuasionGame,
    SignalStructure,
    joint_prior,
    receiver_value,
    receiver_value_ambiguous,
    sender_value,
    sender_value_alpha,
)
from .maxmin import maxmin_lp, solve_receiver_maxmin

ZERO = Fraction(0)
DEFAULT_BLEND = Fraction(1, 2)
DEFAULT_BUDGET = 16

DIRECT_SEARCH_CAVEAT = (
    "search covered direct (recommendation) optimal signals with obedient plans only; "
    "a negative answer does not rule out other optimal signal/plan pairs"
)


@dataclass(frozen=True)
class NoGainReport:
    bayesian_value: Fraction
    ambiguous_value: Fraction
    alpha: Fraction
    plan: ContingentPlan

    @property
    def holds(self) -> bool:
        return self.ambiguous_value <= self.bayesian_value


def check_no_gain(game: PersuasionGame, ambig: AmbiguousSignal, alpha=1) -> NoGainReport:
    """Compare the sender's value under ``ambig`` with optimal Bayesian persuasion.

    With ``alpha == 1`` (MEU sender) a failure is impossible for a correct
    implementation and raises :class:`GuaranteeViolation` with a replay dump.
    """
    alpha = to_rational(alpha, "alpha")
    bayes = solve_bayesian(game)
    maxmin = solve_receiver_maxmin(game, ambig, alpha)
    report = NoGainReport(bayes.value, maxmin.sender_value, alpha, maxmin.plan)
    if alpha == 1 and not report.holds:
        from .io import ambiguous_to_dict, game_to_dict, plan_to_dict

        raise GuaranteeViolation(
            f"MEU sender gains from ambiguity: {report.ambiguous_value} > {report.bayesian_value}",
            dump={
                "game": game_to_dict(game),
                "ambiguous": ambiguous_to_dict(ambig),
                "plan": plan_to_dict(maxmin.plan),
                "bayesian_value": str(report.bayesian_value),
                "ambiguous_value": str(report.ambiguous_value),
            },
        )
    return report


@dataclass(frozen=True)
class ImprovingSignal:
    signal: SignalStructure
    blend: Fraction  # weight on the raw LP optimiser when mixed back with the star signal


def _require_best_response(game, star_signal, star_plan):
    if len(star_plan.rows) != star_signal.n_messages:
        raise InputError("plan and signal disagree on the number of messages")
    if not is_best_response(game, joint_prior(game, star_signal).table, star_plan):
        raise PreconditionError("star plan is not a receiver best response to the star signal")


def pareto_conditions(game, star_signal, star_plan, candidate: SignalStructure) -> list:
    """Violations of the Pareto-improvement conditions for ``candidate`` (empty if it qualifies)."""
    problems = []
    if candidate.messages != star_signal.messages:
        problems.append("candidate uses a different message list")
        return problems
    star, cand = joint_prior(game, star_signal), joint_prior(game, candidate)
    if any((a > 0) != (b > 0) for a, b in zip(star.message_weights, cand.message_weights)):
        problems.append("candidate does not have the same support")
    if receiver_value(game, cand, star_plan) < receiver_value(game, star, star_plan):
        problems.append("receiver is worse off")
    if sender_value(game, cand, star_plan) <= sender_value(game, star, star_plan):
        problems.append("sender is not strictly better off")
    return problems


def pareto_improve(game: PersuasionGame, star_signal: SignalStructure, star_plan: ContingentPlan,
                   blend=DEFAULT_BLEND) -> Optional[ImprovingSignal]:
    """Search for a same-support signal that helps the sender without hurting the receiver.

    Solves ``max V_S(pi', f*)`` over kernels on the star signal's messages
    subject to ``V_R(pi', f*) >= V_R(pi*, f*)``. If the optimiser stops
    sending some message, it is mixed with ``pi*`` at weight ``blend``;
    both inequalities survive by linearity.
    """
    blend = to_rational(blend, "blend")
    if not 0 < blend <= 1:
        raise InputError(f"blend must lie in (0, 1], got {blend}", "blend")
    _require_best_response(game, star_signal, star_plan)
    n_s, n_m = game.n_states, star_signal.n_messages
    prior = game.prior
    # Variables k(w, m) = pi'(m | w), flattened w * n_m + m.
    u_r = [[sum((star_plan.rows[m][a] * game.receiver_payoff[a][w] for a in range(game.n_actions)), ZERO)
            for m in range(n_m)] for w in range(n_s)]
    u_s = [[sum((star_plan.rows[m][a] * game.sender_payoff[a][w] for a in range(game.n_actions)), ZERO)
            for m in range(n_m)] for w in range(n_s)]
    star = joint_prior(game, star_signal)
    base_r = receiver_value(game, star, star_plan)
    base_s = sender_value(game, star, star_plan)
    rows = []
    for w in range(n_s):
        coeffs = [0] * (n_s * n_m)
        for m in range(n_m):
            coeffs[w * n_m + m] = 1
        rows.append((coeffs, EQ, 1))
    rows.append(([prior[w] * u_r[w][m] for w in range(n_s) for m in range(n_m)], GE, base_r))
    objective = [prior[w] * u_s[w][m] for w in range(n_s) for m in range(n_m)]
    sol = solve_lp(LinearProgram(objective, rows))
    if not sol.optimal:
        raise RuntimeError(f"improvement LP reported {sol.status}")
    if sol.value <= base_s:
        return None
    kernel = [sol.primal[w * n_m:(w + 1) * n_m] for w in range(n_s)]
    raw = SignalStructure(star_signal.messages, kernel, prune=False)
    if all(any(row[m] for row in kernel) for m in range(n_m)):
        improving = ImprovingSignal(raw, Fraction(1))
    else:
        improving = ImprovingSignal(raw.mix(star_signal, blend), blend)
    problems = pareto_conditions(game, star_signal, star_plan, improving.signal)
    if problems:
        raise RuntimeError(f"improvement LP returned an invalid witness: {problems}")
    return improving


@dataclass(frozen=True)
class PremiumWitness:
    star_signal: SignalStructure
    star_plan: ContingentPlan
    improving: ImprovingSignal


@dataclass(frozen=True)
class ImprovabilityReport:
    improvable: bool
    witness: Optional[PremiumWitness]
    candidates_checked: int
    note: str = ""


def premium_always_exists(game: PersuasionGame, budget: int = DEFAULT_BUDGET,
                          blend=DEFAULT_BLEND) -> ImprovabilityReport:
    """Decide Pareto improvability over direct optimal signals found on the obedience-LP optimal face."""
    vertices = optimal_face_vertices(obedience_lp(game), budget)
    for count, q in enumerate(vertices, start=1):
        signal, plan, _ = direct_signal(game, q)
        improving = pareto_improve(game, signal, plan, blend)
        if improving is not None:
            return ImprovabilityReport(True, PremiumWitness(signal, plan, improving), count)
    return ImprovabilityReport(False, None, len(vertices), DIRECT_SEARCH_CAVEAT)


@dataclass(frozen=True)
class PremiumCertificate:
    ambiguous: AmbiguousSignal
    plan: ContingentPlan
    alpha: Fraction
    premium_value: Fraction
    bayesian_value: Fraction

    @property
    def gain(self) -> Fraction:
        return self.premium_value - self.bayesian_value


def construct_premium(game: PersuasionGame, star_signal: SignalStructure, star_plan: ContingentPlan,
                      improving, alpha) -> PremiumCertificate:
    """Ambiguous signal ``co{pi*, pi'}`` that still induces ``f*`` and pays the alpha-MEU sender more.

    ``improving`` may be an :class:`ImprovingSignal` or a bare signal.
    """
    alpha = to_rational(alpha, "alpha")
    if not 0 <= alpha <= 1:
        raise InputError(f"alpha must lie in [0, 1], got {alpha}", "alpha")
    signal = improving.signal if isinstance(improving, ImprovingSignal) else improving
    _require_best_response(game, star_signal, star_plan)
    problems = pareto_conditions(game, star_signal, star_plan, signal)
    if problems:
        raise PreconditionError(f"improving signal is not a Pareto improvement: {problems}")
    bayesian_value = solve_bayesian(game).value
    star_value = sender_value(game, joint_prior(game, star_signal), star_plan)
    if star_value != bayesian_value:
        raise PreconditionError(
            f"star pair pays the sender {star_value}, not the Bayesian optimum {bayesian_value}")

    ambig = AmbiguousSignal((star_signal, signal))
    t_star = solve_lp(maxmin_lp(game, ambig)).value
    if receiver_value_ambiguous(game, ambig, star_plan) != t_star:
        raise RuntimeError("star plan is not maxmin-optimal under co{pi*, pi'}")
    premium_value = sender_value_alpha(game, ambig, star_plan, alpha)
    improved_value = sender_value(game, joint_prior(game, signal), star_plan)
    if premium_value != alpha * star_value + (1 - alpha) * improved_value:
        raise RuntimeError("alpha-MEU value does not split across the two vertices")
    return PremiumCertificate(ambig, star_plan, alpha, premium_value, bayesian_value)
