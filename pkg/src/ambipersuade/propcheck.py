"""Seeded random instances and the property suites run over them.

Instance ``i`` of a suite uses seed ``base_seed + i``, so results do not
depend on the number of workers or on scheduling order.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

from .errors import InputError, GuaranteeViolation
from .exact_lp import to_rational
from .game import AmbiguousSignal, PersuasionGame, SignalStructure
from .io import ambiguous_to_dict, game_to_dict

DEFAULT_ALPHAS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10))
PRIOR_MODES = ("uniform", "random-interior")


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n_states: int = 3
    n_actions: int = 3
    n_messages: int = 3
    n_vertices: int = 3
    payoff_range: int = 5
    prior_mode: str = "random-interior"

    def __post_init__(self):
        for name in ("n_states", "n_actions", "n_messages", "n_vertices", "payoff_range"):
            if getattr(self, name) < 1:
                raise InputError(f"must be at least 1, got {getattr(self, name)}", name)
        if self.prior_mode not in PRIOR_MODES:
            raise InputError(f"expected one of {PRIOR_MODES}", "prior_mode")


def _weights(rng, n, spread):
    """Random distribution with every entry >= 1 / (n * (spread + 1))."""
    raw = [1 + rng.randint(0, spread) for _ in range(n)]
    total = sum(raw)
    return [Fraction(v, total) for v in raw]


def gen_game(config: GenConfig) -> PersuasionGame:
    rng = random.Random(config.seed)
    n_s, n_a, bound = config.n_states, config.n_actions, config.payoff_range
    if config.prior_mode == "uniform":
        prior = [Fraction(1, n_s)] * n_s
    else:
        prior = _weights(rng, n_s, 3)
    u_r = [[rng.randint(-bound, bound) for _ in range(n_s)] for _ in range(n_a)]
    u_s = [[rng.randint(-bound, bound) for _ in range(n_s)] for _ in range(n_a)]
    return PersuasionGame(
        states=[f"s{w}" for w in range(n_s)],
        actions=[f"a{a}" for a in range(n_a)],
        prior=prior,
        receiver_payoff=u_r,
        sender_payoff=u_s,
    )


def gen_ambiguous(config: GenConfig, game: PersuasionGame) -> AmbiguousSignal:
    """Vertices whose every kernel entry is at least ``1 / (4 * n_messages * n_states)``.

    That lower bound on entries bounds every message marginal the same way,
    so common support holds by construction.
    """
    rng = random.Random(f"{config.seed}:ambiguous")
    n_m = config.n_messages
    messages = [f"m{m + 1}" for m in range(n_m)]
    spread = 4 * game.n_states - 1
    return AmbiguousSignal(tuple(
        SignalStructure(messages, [_weights(rng, n_m, spread) for _ in range(game.n_states)], prune=False)
        for _ in range(config.n_vertices)
    ))


def instance_digest(*parts) -> str:
    blob = json.dumps(parts, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class Violation:
    seed: int
    digest: str
    diagnostic: str


@dataclass
class SuiteReport:
    name: str
    instances_run: int
    violations: list = field(default_factory=list)
    elapsed: float = 0.0
    witnesses: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, include_elapsed=True) -> dict:
        data = asdict(self)
        data["passed"] = self.passed
        if not include_elapsed:
            del data["elapsed"]
        return data


def _run(name, worker, jobs, workers):
    start = time.perf_counter()
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [worker(job) for job in jobs]
    report = SuiteReport(name, len(jobs))
    for violations, witnessed in results:
        report.violations.extend(violations)
        report.witnesses += witnessed
    report.violations.sort(key=lambda v: (v.seed, v.diagnostic))
    report.elapsed = time.perf_counter() - start
    return report


def _no_gain_job(job):
    config, alpha = job
    from .premium import check_no_gain

    game = gen_game(config)
    ambig = gen_ambiguous(config, game)
    payload = {"game": game_to_dict(game), "ambiguous": ambiguous_to_dict(ambig)}
    digest = instance_digest(payload)
    try:
        check_no_gain(game, ambig, alpha)
    except GuaranteeViolation as exc:
        return [Violation(config.seed, digest, json.dumps({"error": str(exc), **exc.dump}))], 0
    except Exception as exc:  # any crash on a valid instance is a bug worth replaying
        return [Violation(config.seed, digest, json.dumps({"error": repr(exc), **payload}))], 0
    return [], 0


def _check_n(n):
    if n < 1:
        raise InputError(f"need at least one instance, got {n}", "n")


def run_no_gain_suite(n: int, base_seed: int = 0, config: GenConfig = None, alpha=1,
                      workers: int = 1) -> SuiteReport:
    """Check the no-gain property with an MEU sender on ``n`` random instances."""
    _check_n(n)
    config = config or GenConfig()
    alpha = to_rational(alpha, "alpha")
    jobs = [(replace(config, seed=base_seed + i), alpha) for i in range(n)]
    return _run("no-gain", _no_gain_job, jobs, workers)


def premium_violations(game: PersuasionGame, alphas, budget: int, seed: int = -1):
    """Gain checks for one game; returns ``(violations, witness_found)``."""
    from .premium import construct_premium, premium_always_exists

    payload = {"game": game_to_dict(game)}
    digest = instance_digest(payload)

    def violation(message):
        return Violation(seed, digest, json.dumps({"error": message, **payload}))

    try:
        report = premium_always_exists(game, budget)
        if report.witness is None:
            return [], 0
        w = report.witness
        out = []
        for alpha in alphas:
            gain = construct_premium(game, w.star_signal, w.star_plan, w.improving, alpha).gain
            if gain <= 0:
                out.append(violation(f"gain {gain} at alpha {alpha}"))
        gain = construct_premium(game, w.star_signal, w.star_plan, w.improving, 1).gain
        if gain != 0:
            out.append(violation(f"gain {gain} at alpha 1"))
        return out, 1
    except Exception as exc:
        return [violation(repr(exc))], 0


def _premium_job(job):
    config, alphas, budget = job
    return premium_violations(gen_game(config), alphas, budget, config.seed)


def run_premium_suite(n: int, base_seed: int = 0, alpha_grid=DEFAULT_ALPHAS, config: GenConfig = None,
                      budget: int = 16, games=None, workers: int = 1) -> SuiteReport:
    """Whenever a Pareto improvement is found, the constructed premium must be positive on ``alpha_grid``.

    ``games`` replaces random generation with a fixed list (seeds are then
    list positions).
    """
    alphas = tuple(to_rational(a, "alphas") for a in alpha_grid)
    for a in alphas:
        if not 0 <= a < 1:
            raise InputError(f"grid alphas must lie in [0, 1), got {a}", "alphas")
    if games is not None:
        start = time.perf_counter()
        report = SuiteReport("premium", len(games))
        for i, game in enumerate(games):
            violations, witnessed = premium_violations(game, alphas, budget, i)
            report.violations.extend(violations)
            report.witnesses += witnessed
        report.elapsed = time.perf_counter() - start
        return report
    _check_n(n)
    config = config or GenConfig(n_states=2, n_actions=3)
    jobs = [(replace(config, seed=base_seed + i), alphas, budget) for i in range(n)]
    return _run("premium", _premium_job, jobs, workers)


def _minimax_job(job):
    from .maxmin import find_saddle, maxmin_lp, solve_mixture_minmax, solve_receiver_maxmin, verify_saddle
    from .exact_lp import solve_lp

    config = job
    game = gen_game(config)
    ambig = gen_ambiguous(config, game)
    payload = {"game": game_to_dict(game), "ambiguous": ambiguous_to_dict(ambig)}
    digest = instance_digest(payload)
    out = []
    try:
        maxmin_value = solve_lp(maxmin_lp(game, ambig)).value
        minmax_value = solve_mixture_minmax(game, ambig).value
        if maxmin_value != minmax_value:
            out.append(f"max-min {maxmin_value} != min-max {minmax_value}")
        plan = solve_receiver_maxmin(game, ambig).plan
        verdict = verify_saddle(game, ambig, plan, find_saddle(game, ambig, plan))
        if not verdict:
            out.append(f"saddle certificate rejected: {verdict.violations}")
    except Exception as exc:
        out.append(repr(exc))
    return [Violation(config.seed, digest, json.dumps({"error": e, **payload})) for e in out], 0


def run_minimax_suite(n: int, base_seed: int = 0, config: GenConfig = None, workers: int = 1) -> SuiteReport:
    """Exact max-min = min-max exchange plus saddle-certificate verification."""
    _check_n(n)
    config = config or GenConfig()
    jobs = [replace(config, seed=base_seed + i) for i in range(n)]
    return _run("minimax", _minimax_job, jobs, workers)
