"""Persuasion games, signals, contingent plans and their payoff functionals.

Every matrix is a tuple of tuples of :class:`~fractions.Fraction`. Payoff
matrices are indexed ``[action][state]``, signal kernels ``[state][message]``,
joint priors ``[state][message]`` and plans ``[message][action]``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .exact_lp import to_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def _vector(values, field):
    return tuple(to_rational(v, f"{field}[{i}]") for i, v in enumerate(values))


def _matrix(rows, n_rows, n_cols, field):
    if len(rows) != n_rows:
        raise InputError(f"expected {n_rows} rows, got {len(rows)}", field)
    out = []
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise InputError(f"expected {n_cols} entries, got {len(row)}", f"{field}[{i}]")
        out.append(_vector(row, f"{field}[{i}]"))
    return tuple(out)


def _check_distribution(row, field):
    for j, v in enumerate(row):
        if v < 0:
            raise InputError(f"negative probability {v}", f"{field}[{j}]")
    total = sum(row, ZERO)
    if total != 1:
        raise InputError(f"row sums to {total}, not 1", field)


def _labels(values, field):
    labels = tuple(str(v) for v in values)
    if len(set(labels)) != len(labels):
        raise InputError("duplicate labels", field)
    return labels


@dataclass(frozen=True)
class PersuasionGame:
    states: tuple
    actions: tuple
    prior: tuple
    receiver_payoff: tuple
    sender_payoff: tuple

    def __post_init__(self):
        states = _labels(self.states, "states")
        actions = _labels(self.actions, "actions")
        if not states:
            raise InputError("at least one state is required", "states")
        if not actions:
            raise InputError("at least one action is required", "actions")
        if len(self.prior) != len(states):
            raise InputError(f"{len(self.prior)} prior entries for {len(states)} states", "prior")
        prior = _vector(self.prior, "prior")
        for i, p in enumerate(prior):
            if p <= 0:
                raise InputError("prior must have full support (every entry > 0)", f"prior[{i}]")
        if sum(prior, ZERO) != 1:
            raise InputError(f"prior sums to {sum(prior, ZERO)}, not 1", "prior")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "receiver_payoff",
                           _matrix(self.receiver_payoff, len(actions), len(states), "u_R"))
        object.__setattr__(self, "sender_payoff",
                           _matrix(self.sender_payoff, len(actions), len(states), "u_S"))

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_actions(self) -> int:
        return len(self.actions)

    def action_index(self, action) -> int:
        if isinstance(action, int):
            return action
        return self.actions.index(str(action))

    def replace_payoffs(self, receiver=None, sender=None) -> "PersuasionGame":
        return PersuasionGame(
            self.states, self.actions, self.prior,
            self.receiver_payoff if receiver is None else receiver,
            self.sender_payoff if sender is None else sender,
        )


@dataclass(frozen=True)
class SignalStructure:
    """A kernel ``pi(m | state)``.

    Messages that are never sent (all-zero columns) are pruned on
    construction unless ``prune=False``; with a full-support prior these are
    exactly the zero-marginal messages.
    """

    messages: tuple
    kernel: tuple
    prune: InitVar[bool] = True

    def __post_init__(self, prune):
        messages = _labels(self.messages, "messages")
        if not self.kernel:
            raise InputError("kernel needs at least one state row", "kernel")
        kernel = _matrix(self.kernel, len(self.kernel), len(messages), "kernel")
        for i, row in enumerate(kernel):
            _check_distribution(row, f"kernel[{i}]")
        if prune:
            keep = [m for m in range(len(messages)) if any(row[m] for row in kernel)]
            if len(keep) != len(messages):
                messages = tuple(messages[m] for m in keep)
                kernel = tuple(tuple(row[m] for m in keep) for row in kernel)
        object.__setattr__(self, "messages", messages)
        object.__setattr__(self, "kernel", kernel)

    @property
    def n_messages(self) -> int:
        return len(self.messages)

    @classmethod
    def uninformative(cls, n_states: int, message="m") -> "SignalStructure":
        return cls((message,), [[1]] * n_states)

    @classmethod
    def full_revelation(cls, n_states: int, messages=None) -> "SignalStructure":
        messages = messages or [f"m{i + 1}" for i in range(n_states)]
        return cls(messages, [[1 if m == w else 0 for m in range(n_states)] for w in range(n_states)])

    def mix(self, other: "SignalStructure", weight) -> "SignalStructure":
        """``weight * self + (1 - weight) * other`` on a shared message list."""
        if self.messages != other.messages:
            raise InputError("cannot mix signals with different message lists")
        w = to_rational(weight)
        return SignalStructure(self.messages, [
            [w * a + (1 - w) * b for a, b in zip(ra, rb)] for ra, rb in zip(self.kernel, other.kernel)
        ], prune=False)


@dataclass(frozen=True)
class JointPrior:
    table: tuple

    @property
    def message_weights(self) -> tuple:
        return tuple(sum(col, ZERO) for col in zip(*self.table))

    def posterior(self, m: int) -> tuple:
        col = [row[m] for row in self.table]
        tau = sum(col, ZERO)
        if tau == 0:
            raise InputError(f"message {m} has zero probability; its posterior is undefined")
        return tuple(v / tau for v in col)


def mix_joints(joints: Sequence[JointPrior], weights: Sequence) -> JointPrior:
    """Convex combination of joint priors with the given weights."""
    if len(joints) != len(weights) or not joints:
        raise InputError("need one weight per joint prior")
    n_s, n_m = len(joints[0].table), len(joints[0].table[0])
    return JointPrior(tuple(
        tuple(sum((w * j.table[s][m] for w, j in zip(weights, joints)), ZERO) for m in range(n_m))
        for s in range(n_s)
    ))


@dataclass(frozen=True)
class AmbiguousSignal:
    """Finitely generated ambiguous signal: the convex hull of ``vertices``.

    Vertices share one message list and satisfy common support. Messages sent
    by no vertex are pruned jointly.
    """

    vertices: tuple

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if not vertices:
            raise InputError("an ambiguous signal needs at least one vertex", "vertices")
        messages = vertices[0].messages
        n_states = len(vertices[0].kernel)
        for k, v in enumerate(vertices):
            if v.messages != messages:
                raise InputError("vertices must share one message list", f"vertices[{k}].messages")
            if len(v.kernel) != n_states:
                raise InputError("vertices disagree on the number of states", f"vertices[{k}].kernel")
        support = [tuple(any(row[m] for row in v.kernel) for m in range(len(messages))) for v in vertices]
        for k, s in enumerate(support[1:], start=1):
            if s != support[0]:
                bad = [messages[m] for m in range(len(messages)) if s[m] != support[0][m]]
                raise InputError(f"common support violated on messages {bad}", f"vertices[{k}]")
        keep = [m for m in range(len(messages)) if support[0][m]]
        if len(keep) != len(messages):
            vertices = tuple(
                SignalStructure([messages[m] for m in keep],
                                [[row[m] for m in keep] for row in v.kernel], prune=False)
                for v in vertices
            )
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def from_kernels(cls, messages, kernels) -> "AmbiguousSignal":
        return cls(tuple(SignalStructure(messages, k, prune=False) for k in kernels))

    @property
    def messages(self) -> tuple:
        return self.vertices[0].messages

    @property
    def n_messages(self) -> int:
        return len(self.messages)


@dataclass(frozen=True)
class ContingentPlan:
    rows: tuple

    def __post_init__(self):
        if not self.rows:
            raise InputError("a plan needs at least one message row", "plan")
        width = len(self.rows[0])
        rows = _matrix(self.rows, len(self.rows), width, "plan")
        for i, row in enumerate(rows):
            _check_distribution(row, f"plan[{i}]")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def pure(cls, choices: Sequence[int], n_actions: int) -> "ContingentPlan":
        return cls(tuple(tuple(ONE if a == c else ZERO for a in range(n_actions)) for c in choices))

    @classmethod
    def constant(cls, action: int, n_messages: int, n_actions: int) -> "ContingentPlan":
        return cls.pure([action] * n_messages, n_actions)

    @property
    def is_pure(self) -> bool:
        return all(max(row) == 1 for row in self.rows)

    def choices(self) -> tuple:
        """Action index per message for a pure plan."""
        if not self.is_pure:
            raise ValueError("plan is mixed")
        return tuple(row.index(ONE) for row in self.rows)

    def describe(self, actions: Sequence[str]) -> list:
        return [{actions[a]: str(p) for a, p in enumerate(row) if p} for row in self.rows]


def _check_signal(game: PersuasionGame, signal: SignalStructure):
    if len(signal.kernel) != game.n_states:
        raise InputError(f"signal has {len(signal.kernel)} state rows, game has {game.n_states} states")


def joint_prior(game: PersuasionGame, signal: SignalStructure) -> JointPrior:
    """``p(state, m) = pi(m | state) * prior(state)``."""
    _check_signal(game, signal)
    return JointPrior(tuple(
        tuple(k * p for k in row) for row, p in zip(signal.kernel, game.prior)
    ))


def expected_payoff(payoff, joint: JointPrior, plan: ContingentPlan) -> Fraction:
    """``sum_{m,a,w} plan[m][a] * payoff[a][w] * joint[w][m]``."""
    table = joint.table
    if len(plan.rows) != len(table[0]):
        raise InputError(f"plan has {len(plan.rows)} message rows, signal has {len(table[0])} messages")
    if len(plan.rows[0]) != len(payoff):
        raise InputError(f"plan has {len(plan.rows[0])} actions, game has {len(payoff)}")
    if len(payoff[0]) != len(table):
        raise InputError("joint prior and payoff disagree on the number of states")
    total = ZERO
    for m, row in enumerate(plan.rows):
        for a, fa in enumerate(row):
            if fa:
                u = payoff[a]
                total += fa * sum((u[w] * table[w][m] for w in range(len(table))), ZERO)
    return total


def receiver_value(game: PersuasionGame, joint: JointPrior, plan: ContingentPlan) -> Fraction:
    return expected_payoff(game.receiver_payoff, joint, plan)


def sender_value(game: PersuasionGame, joint: JointPrior, plan: ContingentPlan) -> Fraction:
    return expected_payoff(game.sender_payoff, joint, plan)


def vertex_joints(game: PersuasionGame, ambig: AmbiguousSignal) -> list:
    return [joint_prior(game, v) for v in ambig.vertices]


def receiver_value_ambiguous(game: PersuasionGame, ambig: AmbiguousSignal, plan: ContingentPlan) -> Fraction:
    """Worst-case receiver value over the hull; attained at a vertex by linearity."""
    return min(receiver_value(game, j, plan) for j in vertex_joints(game, ambig))


def sender_value_alpha(game: PersuasionGame, ambig: AmbiguousSignal, plan: ContingentPlan, alpha=1) -> Fraction:
    """alpha-MEU sender value: ``alpha * min + (1 - alpha) * max`` over the hull."""
    alpha = to_rational(alpha, "alpha")
    if not 0 <= alpha <= 1:
        raise InputError(f"alpha must lie in [0, 1], got {alpha}", "alpha")
    values = [sender_value(game, j, plan) for j in vertex_joints(game, ambig)]
    return alpha * min(values) + (1 - alpha) * max(values)
