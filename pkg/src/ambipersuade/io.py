"""JSON file formats for games, signals, ambiguous signals and plans.

Numbers may be integers, ``"p/q"`` strings or finite decimals (string or bare
JSON number); decimals are read without passing through binary floats.
Serialisation always writes exact ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .game import AmbiguousSignal, ContingentPlan, PersuasionGame, SignalStructure


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        # parse_float keeps the literal text so decimals convert exactly.
        return json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _require(data, key, where):
    if not isinstance(data, dict):
        raise InputError("expected a JSON object", where or "<root>")
    if key not in data:
        raise InputError(f"missing field {key!r}", where or "<root>")
    return data[key]


def game_from_dict(data) -> PersuasionGame:
    return PersuasionGame(
        states=_require(data, "states", ""),
        actions=_require(data, "actions", ""),
        prior=_require(data, "prior", ""),
        receiver_payoff=_require(data, "u_R", ""),
        sender_payoff=_require(data, "u_S", ""),
    )


def signal_from_dict(data, game: PersuasionGame = None, prune=True, where="") -> SignalStructure:
    messages = _require(data, "messages", where)
    kernel = _require(data, "kernel", where)
    if game is not None and len(kernel) != game.n_states:
        raise InputError(f"kernel has {len(kernel)} rows, game has {game.n_states} states",
                         f"{where}kernel" if where else "kernel")
    return SignalStructure(messages, kernel, prune=prune)


def ambiguous_from_dict(data, game: PersuasionGame = None) -> AmbiguousSignal:
    vertices = _require(data, "vertices", "")
    if not isinstance(vertices, list) or not vertices:
        raise InputError("expected a non-empty list of signals", "vertices")
    return AmbiguousSignal(tuple(
        signal_from_dict(v, game, prune=False, where=f"vertices[{k}].") for k, v in enumerate(vertices)
    ))


def plan_from_dict(data, game: PersuasionGame = None) -> ContingentPlan:
    rows = _require(data, "rows", "")
    if game is not None:
        for i, row in enumerate(rows):
            if len(row) != game.n_actions:
                raise InputError(f"expected {game.n_actions} action probabilities", f"rows[{i}]")
    return ContingentPlan(rows)


def parse_game(path) -> PersuasionGame:
    return game_from_dict(load_json(path))


def parse_signal(path, game: PersuasionGame = None) -> SignalStructure:
    return signal_from_dict(load_json(path), game)


def parse_ambiguous(path, game: PersuasionGame = None) -> AmbiguousSignal:
    return ambiguous_from_dict(load_json(path), game)


def parse_plan(path, game: PersuasionGame = None) -> ContingentPlan:
    return plan_from_dict(load_json(path), game)


def _strs(rows):
    return [[str(v) for v in row] for row in rows]


def game_to_dict(game: PersuasionGame) -> dict:
    return {
        "states": list(game.states),
        "prior": [str(p) for p in game.prior],
        "actions": list(game.actions),
        "u_R": _strs(game.receiver_payoff),
        "u_S": _strs(game.sender_payoff),
    }


def signal_to_dict(signal: SignalStructure) -> dict:
    return {"messages": list(signal.messages), "kernel": _strs(signal.kernel)}


def ambiguous_to_dict(ambig: AmbiguousSignal) -> dict:
    return {"vertices": [signal_to_dict(v) for v in ambig.vertices]}


def plan_to_dict(plan: ContingentPlan) -> dict:
    return {"rows": _strs(plan.rows)}


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
