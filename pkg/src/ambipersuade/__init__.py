"""Exact solvers for persuasion games with ambiguous signals."""

from ._kernel import BACKEND
from .bayes import BayesianSolution, best_response, solve_bayesian
from .errors import InputError, PreconditionError, GuaranteeViolation
from .exact_lp import Constraint, LinearProgram, LpSolution, solve_lp
from .game import (
    AmbiguousSignal,
    ContingentPlan,
    JointPrior,
    PersuasionGame,
    SignalStructure,
    joint_prior,
    receiver_value,
    sender_value,
    sender_value_alpha,
)
from .maxmin import find_saddle, solve_mixture_minmax, solve_receiver_maxmin, verify_saddle
from .premium import check_no_gain, construct_premium, pareto_improve, premium_always_exists
from .propcheck import GenConfig, run_minimax_suite, run_no_gain_suite, run_premium_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BayesianSolution", "best_response", "solve_bayesian",
    "InputError", "PreconditionError", "GuaranteeViolation",
    "Constraint", "LinearProgram", "LpSolution", "solve_lp",
    "AmbiguousSignal", "ContingentPlan", "JointPrior", "PersuasionGame", "SignalStructure",
    "joint_prior", "receiver_value", "sender_value", "sender_value_alpha",
    "find_saddle", "solve_mixture_minmax", "solve_receiver_maxmin", "verify_saddle",
    "check_no_gain", "construct_premium", "pareto_improve", "premium_always_exists",
    "GenConfig", "run_minimax_suite", "run_no_gain_suite", "run_premium_suite",
]
