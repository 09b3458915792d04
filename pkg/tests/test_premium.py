from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ambipersuade import AmbiguousSignal, ContingentPlan, SignalStructure, joint_prior, receiver_value, sender_value
from ambipersuade.bayes import solve_bayesian
from ambipersuade.errors import InputError, PreconditionError
from ambipersuade.premium import (
    check_no_gain,
    construct_premium,
    pareto_conditions,
    pareto_improve,
    premium_always_exists,
)

from strategies import game_with_ambiguity, games

ALPHAS = [F(0), F(1, 4), F(1, 2), F(3, 4), F(9, 10)]


def test_no_gain_on_voter_example(exp0, exp0_ambiguous):
    report = check_no_gain(exp0, exp0_ambiguous)
    assert (report.bayesian_value, report.ambiguous_value, report.holds) == (F(3, 4), 0, True)


def test_no_gain_on_three_action_example(exp, exp_ambiguous):
    report = check_no_gain(exp, exp_ambiguous)
    assert report.bayesian_value == report.ambiguous_value == F(3, 2)


@settings(max_examples=40, deadline=None)
@given(games())
def test_bayesian_signal_as_degenerate_ambiguity(game):
    report = check_no_gain(game, AmbiguousSignal((solve_bayesian(game).direct_signal,)))
    assert report.ambiguous_value == report.bayesian_value


@settings(max_examples=120, deadline=None)
@given(game_with_ambiguity())
def test_meu_sender_never_gains(instance):
    game, ambig = instance
    assert check_no_gain(game, ambig).holds


def test_lp_improvement_for_three_action_example(exp, exp_star, bc):
    improving = pareto_improve(exp, exp_star, bc)
    assert improving.blend == 1
    assert improving.signal.kernel == ((F(2, 3), F(1, 3)), (0, 1))
    joint = joint_prior(exp, improving.signal)
    assert sender_value(exp, joint, bc) == F(5, 3)
    assert receiver_value(exp, joint, bc) == F(1, 2)


def test_voter_example_not_improvable(exp0, exp0_star, new_sq):
    assert pareto_improve(exp0, exp0_star, new_sq) is None
    report = premium_always_exists(exp0)
    assert not report.improvable and report.note


def test_aligned_interests_not_improvable(exp):
    aligned = exp.replace_payoffs(sender=exp.receiver_payoff)
    sol = solve_bayesian(aligned)
    assert pareto_improve(aligned, sol.direct_signal, sol.obedient_plan) is None
    assert not premium_always_exists(aligned).improvable


def test_improvability_search_finds_witness(exp):
    report = premium_always_exists(exp)
    assert report.improvable and report.candidates_checked >= 1
    w = report.witness
    assert pareto_conditions(exp, w.star_signal, w.star_plan, w.improving.signal) == []


def test_blend_restores_a_dropped_message(exp0, exp0_star, new_sq):
    # Paid only for New, the sender would send the New message always and drop the other one.
    game = exp0.replace_payoffs(sender=[[0, 0], [1, 1]])
    improving = pareto_improve(game, exp0_star, new_sq, F(1, 3))
    assert improving.blend == F(1, 3)
    raw = [[1, 0], [1, 0]]
    assert improving.signal.kernel == tuple(
        tuple(F(1, 3) * a + F(2, 3) * b for a, b in zip(r, s)) for r, s in zip(raw, exp0_star.kernel))
    assert all(w > 0 for w in joint_prior(game, improving.signal).message_weights)
    assert pareto_conditions(game, exp0_star, new_sq, improving.signal) == []


def test_constant_plan_cannot_be_improved(exp0):
    signal = SignalStructure(["m1", "m2"], [[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]], prune=False)
    new = exp0.action_index("New")
    assert pareto_improve(exp0, signal, ContingentPlan.pure([new, new], 2)) is None


def test_premium_from_lp_improvement(exp, exp_star, bc):
    improving = pareto_improve(exp, exp_star, bc)
    cert = construct_premium(exp, exp_star, bc, improving, F(1, 2))
    assert (cert.premium_value, cert.gain) == (F(19, 12), F(1, 12))
    assert construct_premium(exp, exp_star, bc, improving, 1).gain == 0


def test_premium_from_perturbed_signal(exp, exp_star, bc, pi_eps):
    assert joint_prior(exp, pi_eps).message_weights[0] == F(5, 11)
    cert = construct_premium(exp, exp_star, bc, pi_eps, F(1, 2))
    assert (cert.premium_value, cert.gain) == (F(67, 44), F(1, 44))
    assert cert.ambiguous == AmbiguousSignal((exp_star, pi_eps))
    assert construct_premium(exp, exp_star, bc, pi_eps, 1).gain == 0
    for alpha in ALPHAS:
        assert construct_premium(exp, exp_star, bc, pi_eps, alpha).gain > 0


def test_construct_premium_preconditions(exp, exp_star, bc, pi_eps):
    ab = ContingentPlan.pure([0, 1], 3)
    with pytest.raises(PreconditionError):
        construct_premium(exp, exp_star, ab, pi_eps, F(1, 2))
    with pytest.raises(PreconditionError):
        construct_premium(exp, exp_star, bc, exp_star, F(1, 2))
    with pytest.raises(InputError):
        construct_premium(exp, exp_star, bc, pi_eps, 2)
    with pytest.raises(InputError):
        pareto_improve(exp, exp_star, bc, 0)


def test_construct_premium_needs_bayesian_optimal_star(exp0, exp0_star, new_sq):
    game = exp0.replace_payoffs(sender=[[0, 0], [1, 1]])
    improving = pareto_improve(game, exp0_star, new_sq)
    assert improving is not None
    with pytest.raises(PreconditionError, match="not the Bayesian optimum"):
        construct_premium(game, exp0_star, new_sq, improving, F(1, 2))


def _grid_best_improvement(game, star_signal, star_plan, n=24):
    """Best sender value over a kernel grid subject to the receiver constraint (2 messages)."""
    star = joint_prior(game, star_signal)
    base_r = receiver_value(game, star, star_plan)
    best = None
    for i in range(n + 1):
        for j in range(n + 1):
            kernel = [[F(i, n), 1 - F(i, n)], [F(j, n), 1 - F(j, n)]]
            joint = joint_prior(game, SignalStructure(star_signal.messages, kernel, prune=False))
            if receiver_value(game, joint, star_plan) >= base_r:
                v = sender_value(game, joint, star_plan)
                best = v if best is None else max(best, v)
    return best


@settings(max_examples=60, deadline=None)
@given(games(n_states=2, n_actions=3))
def test_improvement_lp_agrees_with_grid_search(game):
    sol = solve_bayesian(game)
    if sol.direct_signal.n_messages != 2:
        return
    star_value = sol.value
    grid = _grid_best_improvement(game, sol.direct_signal, sol.obedient_plan)
    improving = pareto_improve(game, sol.direct_signal, sol.obedient_plan)
    if improving is None:
        assert grid <= star_value
    else:
        assert sender_value(game, joint_prior(game, improving.signal), sol.obedient_plan) > star_value


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(-4, 4), st.integers(1, 5), st.integers(-4, 4))
def test_premium_survives_affine_rescaling(r_scale, r_shift, s_scale, s_shift):
    from ambipersuade import fixtures

    exp = fixtures.load_game("exp")
    game = exp.replace_payoffs(
        receiver=[[r_scale * v + r_shift for v in row] for row in exp.receiver_payoff],
        sender=[[s_scale * v + s_shift for v in row] for row in exp.sender_payoff],
    )
    report = premium_always_exists(game)
    assert report.improvable
    w = report.witness
    for alpha in ALPHAS:
        assert construct_premium(game, w.star_signal, w.star_plan, w.improving, alpha).gain > 0
    assert construct_premium(game, w.star_signal, w.star_plan, w.improving, 1).gain == 0
