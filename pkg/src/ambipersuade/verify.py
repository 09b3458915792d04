"""Golden-value battery for the two bundled worked examples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from . import fixtures
from .bayes import best_response, solve_bayesian
from .game import AmbiguousSignal, ContingentPlan, SignalStructure, joint_prior, receiver_value, sender_value
from .maxmin import find_saddle, solve_receiver_maxmin, verify_saddle
from .premium import check_no_gain, construct_premium, pareto_improve, premium_always_exists


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def _state1(posteriors):
    return sorted(p[1] for p in posteriors)


def golden_checks(directory=None) -> list:
    """Run every golden check; fixture problems raise :class:`InputError`."""
    checks = []

    def check(name, expected, actual):
        checks.append(Check(name, expected, actual))

    # Voter example: Status Quo vs New.
    g0 = fixtures.load_game("exp0", directory)
    sq, new = g0.action_index("Status Quo"), g0.action_index("New")
    b0 = solve_bayesian(g0)
    check("exp0 bayesian value", F(3, 4), b0.value)
    check("exp0 posteriors of state 1", [F(0), F(2, 3)], _state1(b0.posteriors))
    weights = dict(zip(b0.direct_signal.messages, b0.message_weights))
    check("exp0 message weights (New, Status Quo)", (F(1, 4), F(3, 4)),
          (weights.get("New"), weights.get("Status Quo")))
    check("exp0 uninformative best response", (new,),
          best_response(g0, SignalStructure.uninformative(2)).choices())
    star0 = fixtures.load_signal("exp0_star", g0, directory)
    plan0 = ContingentPlan.pure([new, sq], 2)
    check("exp0 sender value of star pair", F(3, 4), sender_value(g0, joint_prior(g0, star0), plan0))
    check("exp0 star best response", plan0, best_response(g0, star0))
    amb0 = fixtures.load_ambiguous("exp0_ambiguous", g0, directory)
    mm0 = solve_receiver_maxmin(g0, amb0)
    check("exp0 maxmin plan", (new, new), mm0.plan.choices())
    check("exp0 maxmin value", F(1, 4), mm0.value)
    ng0 = check_no_gain(g0, amb0)
    check("exp0 no-gain values", (F(3, 4), F(0), True), (ng0.bayesian_value, ng0.ambiguous_value, ng0.holds))
    check("exp0 saddle certificate verifies", True, bool(verify_saddle(g0, amb0, mm0.plan,
                                                                       find_saddle(g0, amb0, mm0.plan))))
    check("exp0 star pair not Pareto improvable", None, pareto_improve(g0, star0, plan0))
    check("exp0 improvable", False, premium_always_exists(g0).improvable)

    # Three-action example.
    g = fixtures.load_game("exp", directory)
    a_b, a_c = g.action_index("b"), g.action_index("c")
    b = solve_bayesian(g)
    check("exp bayesian value", F(3, 2), b.value)
    check("exp posteriors of state 1", [F(1, 4), F(3, 4)], _state1(b.posteriors))
    check("exp message weights", (F(1, 2), F(1, 2)), tuple(b.message_weights))
    check("exp recommendations", ("b", "c"), tuple(g.actions[a] for a in b.recommendations))
    star = fixtures.load_signal("exp_star", g, directory)
    bc = ContingentPlan.pure([a_b, a_c], 3)
    check("exp star best response", bc, best_response(g, star))
    eps_signal = fixtures.perturbed_signal(fixtures.DEFAULT_EPSILON)
    check("exp perturbed first-message weight", F(5, 11), joint_prior(g, eps_signal).message_weights[0])
    amb = AmbiguousSignal((star, eps_signal))
    check("exp bundled ambiguous signal", amb, fixtures.load_ambiguous("exp_ambiguous", g, directory))
    mm = solve_receiver_maxmin(g, amb, F(1, 2))
    check("exp maxmin plan", bc, mm.plan)
    check("exp maxmin value", F(1, 2), mm.value)
    check("exp alpha=1/2 sender value", F(67, 44), mm.sender_value)
    perturbed_cert = construct_premium(g, star, bc, eps_signal, F(1, 2))
    check("exp perturbed premium gain at alpha=1/2", F(1, 44), perturbed_cert.gain)
    check("exp perturbed premium gain at alpha=1", F(0), construct_premium(g, star, bc, eps_signal, 1).gain)
    ng = check_no_gain(g, amb)
    check("exp no-gain values", (F(3, 2), F(3, 2), True), (ng.bayesian_value, ng.ambiguous_value, ng.holds))
    improving = pareto_improve(g, star, bc)
    joint = joint_prior(g, improving.signal) if improving else None
    check("exp LP improvement values (V_S, V_R)", (F(5, 3), F(1, 2)),
          (sender_value(g, joint, bc), receiver_value(g, joint, bc)) if joint else None)
    if improving:
        check("exp LP premium gain at alpha=1/2", F(1, 12),
              construct_premium(g, star, bc, improving, F(1, 2)).gain)
    check("exp improvable", True, premium_always_exists(g).improvable)
    return checks
