"""Bundled games and signals for the two worked examples.

``exp0``: voter choosing between Status Quo and New (sender wants Status Quo).
``exp``: two states, three actions a < b < c in the sender's ranking.
"""

from fractions import Fraction
from pathlib import Path

from ..game import SignalStructure
from ..io import parse_ambiguous, parse_game, parse_signal

FIXTURE_DIR = Path(__file__).resolve().parent

# Perturbation used for the second example's alternative signal.
DEFAULT_EPSILON = Fraction(1, 20)


def load_game(name: str, directory=None):
    return parse_game(Path(directory or FIXTURE_DIR) / f"{name}.json")


def load_signal(name: str, game=None, directory=None):
    return parse_signal(Path(directory or FIXTURE_DIR) / f"{name}.json", game)


def load_ambiguous(name: str, game=None, directory=None):
    return parse_ambiguous(Path(directory or FIXTURE_DIR) / f"{name}.json", game)


def perturbed_signal(epsilon=DEFAULT_EPSILON) -> SignalStructure:
    """Two-state signal with posteriors ``1/4 - epsilon`` and ``3/4`` (uniform prior).

    The first message is sent with probability ``1 / (2 + 4 epsilon)`` by Bayes
    plausibility.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 4):
        raise ValueError("epsilon must lie in (0, 1/4)")
    low, high = Fraction(1, 4) - eps, Fraction(3, 4)
    w = 1 / (2 + 4 * eps)
    # joint(state, m) = weight(m) * posterior(m)(state); kernel = joint / prior(state)
    joint = [[w * (1 - low), (1 - w) * (1 - high)], [w * low, (1 - w) * high]]
    kernel = [[2 * v for v in row] for row in joint]
    return SignalStructure(["m1", "m2"], kernel)
