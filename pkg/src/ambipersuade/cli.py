"""Command-line front end.

Exit codes: 0 success (property holds), 1 verification failure or
violation found, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bayes import solve_bayesian
from .errors import InputError, PreconditionError, GuaranteeViolation
from .exact_lp import to_rational
from .game import ContingentPlan, SignalStructure, joint_prior, receiver_value, sender_value
from .io import (
    ambiguous_to_dict,
    dumps,
    game_to_dict,
    parse_ambiguous,
    parse_game,
    parse_plan,
    parse_signal,
    plan_to_dict,
    signal_to_dict,
)
from .maxmin import find_saddle, solve_receiver_maxmin
from .premium import (
    DIRECT_SEARCH_CAVEAT,
    ImprovingSignal,
    PremiumWitness,
    check_no_gain,
    construct_premium,
    pareto_improve,
    premium_always_exists,
)
from .propcheck import DEFAULT_ALPHAS, GenConfig, gen_ambiguous, gen_game, run_minimax_suite, \
    run_no_gain_suite, run_premium_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def exact(q: Fraction) -> dict:
    """Exact string plus a 6-significant-digit display value."""
    return {"exact": str(q), "decimal": format(float(q), ".6g")}


def _jsonable(value):
    if isinstance(value, Fraction):
        return exact(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _digest(args) -> str:
    h = hashlib.sha256()
    for name in ("game", "ambig", "star_signal", "star_plan", "improving"):
        path = getattr(args, name, None)
        if path:
            h.update(Path(path).read_bytes())
    for name in ("alpha", "budget", "blend", "seed", "n", "alphas"):
        if getattr(args, name, None) is not None:
            h.update(f"{name}={getattr(args, name)}".encode())
    return h.hexdigest()[:16]


def _plan_view(plan: ContingentPlan, game, messages) -> dict:
    return {str(m): {game.actions[a]: p for a, p in enumerate(row) if p} for m, row in zip(messages, plan.rows)}


def _signal_view(signal: SignalStructure, game) -> dict:
    return {s: dict(zip(signal.messages, row)) for s, row in zip(game.states, signal.kernel)}


# -- subcommand handlers: each returns (status, result dict) ------------------

def _solve_bayesian(args):
    game = parse_game(args.game)
    sol = solve_bayesian(game)
    return "ok", {
        "value": sol.value,
        "kernel": _signal_view(sol.direct_signal, game),
        "recommendations": [game.actions[a] for a in sol.recommendations],
        "message_weights": dict(zip(sol.direct_signal.messages, sol.message_weights)),
        "posteriors": {m: dict(zip(game.states, p)) for m, p in zip(sol.direct_signal.messages, sol.posteriors)},
        "signal": signal_to_dict(sol.direct_signal),
    }


def _solve_maxmin(args):
    game = parse_game(args.game)
    ambig = parse_ambiguous(args.ambig, game)
    sol = solve_receiver_maxmin(game, ambig, args.alpha)
    cert = find_saddle(game, ambig, sol.plan)
    return "ok", {
        "value": sol.value,
        "alpha": sol.alpha,
        "plan": _plan_view(sol.plan, game, ambig.messages),
        "sender_value": sol.sender_value,
        "saddle_mixture": list(cert.mixture),
        "plan_rows": plan_to_dict(sol.plan),
    }


def _check_no_gain(args):
    game = parse_game(args.game)
    ambig = parse_ambiguous(args.ambig, game)
    report = check_no_gain(game, ambig, args.alpha)
    return ("ok" if report.holds else "fail"), {
        "bayesian_value": report.bayesian_value,
        "ambiguous_value": report.ambiguous_value,
        "alpha": report.alpha,
        "holds": report.holds,
        "plan": _plan_view(report.plan, game, ambig.messages),
    }


def _star_pair(args, game):
    """Manual (signal, plan) pair from files, or None to search the optimal face."""
    if bool(args.star_signal) != bool(args.star_plan):
        raise InputError("--star-signal and --star-plan must be given together")
    if not args.star_signal:
        return None
    signal = parse_signal(args.star_signal, game)
    plan = parse_plan(args.star_plan, game)
    return signal, plan


def _witness_view(game, witness: PremiumWitness) -> dict:
    star, imp = joint_prior(game, witness.star_signal), joint_prior(game, witness.improving.signal)
    f = witness.star_plan
    return {
        "star_signal": signal_to_dict(witness.star_signal),
        "star_plan": plan_to_dict(f),
        "improving_signal": signal_to_dict(witness.improving.signal),
        "blend": witness.improving.blend,
        "V_R": {"star": receiver_value(game, star, f), "improving": receiver_value(game, imp, f)},
        "V_S": {"star": sender_value(game, star, f), "improving": sender_value(game, imp, f)},
    }


def _find_witness(args, game):
    manual = _star_pair(args, game)
    if manual is None:
        report = premium_always_exists(game, args.budget, args.blend)
        return report.witness, report.candidates_checked, report.note
    signal, plan = manual
    improving = pareto_improve(game, signal, plan, args.blend)
    witness = PremiumWitness(signal, plan, improving) if improving else None
    return witness, 1, "" if witness else "manual pair is not Pareto improvable"


def _check_premium(args):
    game = parse_game(args.game)
    witness, checked, note = _find_witness(args, game)
    result = {"improvable": witness is not None, "candidates_checked": checked}
    if witness:
        result["witness"] = _witness_view(game, witness)
    if note:
        result["note"] = note
    return "ok", result


def _construct_premium(args):
    game = parse_game(args.game)
    if args.improving:
        manual = _star_pair(args, game)
        if manual is None:
            raise InputError("--improving needs --star-signal and --star-plan")
        signal, plan = manual
        witness = PremiumWitness(signal, plan, ImprovingSignal(parse_signal(args.improving, game), Fraction(1)))
    else:
        witness, _, note = _find_witness(args, game)
        if witness is None:
            return "fail", {"improvable": False, "note": note or DIRECT_SEARCH_CAVEAT}
    cert = construct_premium(game, witness.star_signal, witness.star_plan, witness.improving, args.alpha)
    return ("ok" if cert.alpha == 1 or cert.gain > 0 else "fail"), {
        "alpha": cert.alpha,
        "premium_value": cert.premium_value,
        "bayesian_value": cert.bayesian_value,
        "gain": cert.gain,
        "ambiguous": ambiguous_to_dict(cert.ambiguous),
        "plan": plan_to_dict(cert.plan),
        "witness": _witness_view(game, witness),
    }


def _config(args, seed=0):
    return GenConfig(seed=seed, n_states=args.states, n_actions=args.actions, n_messages=args.messages,
                     n_vertices=args.vertices, payoff_range=args.payoff_range, prior_mode=args.prior)


def _suite_result(report):
    # Elapsed time goes to stderr so the report itself stays reproducible.
    print(f"elapsed: {report.elapsed:.2f}s", file=sys.stderr)
    return ("ok" if report.passed else "fail"), report.to_dict(include_elapsed=False)


def _suite_no_gain(args):
    return _suite_result(run_no_gain_suite(args.n, args.seed, _config(args), workers=args.workers))


def _suite_premium(args):
    alphas = [to_rational(a, "alphas") for a in args.alphas.split(",")] if args.alphas else DEFAULT_ALPHAS
    return _suite_result(run_premium_suite(args.n, args.seed, alphas, _config(args), args.budget,
                                           workers=args.workers))


def _suite_minimax(args):
    return _suite_result(run_minimax_suite(args.n, args.seed, _config(args), workers=args.workers))


def _verify_examples(args):
    from .verify import golden_checks

    checks = golden_checks(args.fixtures)
    failed = [c for c in checks if not c.ok]
    return ("ok" if not failed else "fail"), {
        "checks": [{"name": c.name, "ok": c.ok, "expected": _repr(c.expected), "actual": _repr(c.actual)}
                   for c in checks],
        "passed": len(checks) - len(failed),
        "failed": len(failed),
    }


def _repr(value):
    if isinstance(value, (list, tuple)):
        return [_repr(v) for v in value]
    if isinstance(value, ContingentPlan):
        return plan_to_dict(value)
    if isinstance(value, (bool, int, str, Fraction)) or value is None:
        return value
    return repr(value)


def _gen_game(args):
    return "raw", game_to_dict(gen_game(_config(args, args.seed)))


def _gen_ambig(args):
    game = parse_game(args.game)
    config = _config(args, args.seed)
    config = GenConfig(**{**config.__dict__, "n_states": game.n_states})
    return "raw", ambiguous_to_dict(gen_ambiguous(config, game))


# -- parser -------------------------------------------------------------------

def _rational_arg(text):
    try:
        return to_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit one machine-readable JSON document")


def _add_gen_sizes(p, states=3, actions=3):
    p.add_argument("--states", type=int, default=states)
    p.add_argument("--actions", type=int, default=actions)
    p.add_argument("--messages", type=int, default=3)
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--payoff-range", type=int, default=5)
    p.add_argument("--prior", choices=["uniform", "random-interior"], default="random-interior")


def _add_search(p):
    p.add_argument("--budget", type=int, default=16, help="optimal-face enumeration budget")
    p.add_argument("--blend", type=_rational_arg, default=Fraction(1, 2))
    p.add_argument("--star-signal", help="signal file for a manual optimal pair")
    p.add_argument("--star-plan", help="plan file for a manual optimal pair")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ambipersuade", description="Exact solvers for persuasion games with ambiguous signals.",
                                     epilog="exit codes: 0 ok, 1 check failed or violation found, 2 input error")
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="group", required=True)

    solve = top.add_parser("solve").add_subparsers(dest="what", required=True)
    p = solve.add_parser("bayesian", help="optimal Bayesian persuasion")
    p.add_argument("game")
    p.set_defaults(handler=_solve_bayesian)
    _add_common(p)
    p = solve.add_parser("maxmin", help="receiver maxmin plan under an ambiguous signal")
    p.add_argument("game")
    p.add_argument("ambig")
    p.add_argument("--alpha", type=_rational_arg, default=Fraction(1))
    p.set_defaults(handler=_solve_maxmin)
    _add_common(p)

    check = top.add_parser("check").add_subparsers(dest="what", required=True)
    p = check.add_parser("no-gain", help="sender value under ambiguity vs Bayesian optimum")
    p.add_argument("game")
    p.add_argument("ambig")
    p.add_argument("--alpha", type=_rational_arg, default=Fraction(1))
    p.set_defaults(handler=_check_no_gain)
    _add_common(p)
    p = check.add_parser("premium", help="is the Bayesian optimum Pareto improvable?")
    p.add_argument("game")
    _add_search(p)
    p.set_defaults(handler=_check_premium)
    _add_common(p)

    construct = top.add_parser("construct").add_subparsers(dest="what", required=True)
    p = construct.add_parser("premium", help="build an ambiguity-premium certificate")
    p.add_argument("game")
    p.add_argument("--alpha", type=_rational_arg, default=Fraction(1))
    p.add_argument("--improving", help="signal file to use as the improving vertex")
    _add_search(p)
    p.set_defaults(handler=_construct_premium)
    _add_common(p)

    suite = top.add_parser("suite").add_subparsers(dest="what", required=True)
    for name, handler, states in (("no-gain", _suite_no_gain, 3), ("premium", _suite_premium, 2),
                                  ("minimax", _suite_minimax, 3)):
        p = suite.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        _add_gen_sizes(p, states=states)
        if name == "premium":
            p.add_argument("--alphas", help="comma-separated grid, e.g. 0,1/4,1/2")
            p.add_argument("--budget", type=int, default=16)
        p.set_defaults(handler=handler)
        _add_common(p)

    verify = top.add_parser("verify").add_subparsers(dest="what", required=True)
    p = verify.add_parser("examples", aliases=["paper-examples"], help="golden values of the worked examples")
    p.add_argument("--fixtures", help="directory holding exp0.json, exp.json, ... (default: bundled)")
    p.set_defaults(handler=_verify_examples)
    _add_common(p)

    gen = top.add_parser("gen").add_subparsers(dest="what", required=True)
    p = gen.add_parser("game")
    p.add_argument("--seed", type=int, default=0)
    _add_gen_sizes(p)
    p.set_defaults(handler=_gen_game)
    _add_common(p)
    p = gen.add_parser("ambig")
    p.add_argument("game")
    p.add_argument("--seed", type=int, default=0)
    _add_gen_sizes(p)
    p.set_defaults(handler=_gen_ambig)
    _add_common(p)
    return parser


def _print_human(command, status, result, out):
    print(f"{command}: {status}", file=out)

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, (dict, list)) and v and not (isinstance(v, list) and
                                                               all(isinstance(x, (str, int, Fraction)) for x in v)):
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {fmt(v)}", file=out)
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, (dict, list)):
                    print(f"{pad}-", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}- {fmt(v)}", file=out)
        else:
            print(f"{pad}{fmt(value)}", file=out)

    def fmt(v):
        if isinstance(v, Fraction):
            return f"{v}  (~{format(float(v), '.6g')})" if v.denominator != 1 else str(v)
        if isinstance(v, list):
            return "[" + ", ".join(fmt(x) for x in v) + "]"
        return str(v)

    walk(result, 1)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join([args.group, args.what])
    try:
        status, result = args.handler(args)
        if status == "raw":
            print(dumps(result), file=out)
            return EXIT_OK
        digest = _digest(args)
        code = EXIT_OK if status == "ok" else EXIT_FAIL
    except (InputError, PreconditionError) as exc:
        status, result, digest, code = "input-error", {"error": str(exc)}, None, EXIT_INPUT
    except GuaranteeViolation as exc:
        status, result, digest, code = "fail", {"error": str(exc), "dump": exc.dump}, None, EXIT_FAIL
    if args.json:
        report = {"command": command, "inputs_digest": digest, "status": status, "result": _jsonable(result)}
        print(json.dumps(report, indent=2), file=out)
    else:
        _print_human(command, status, result, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
