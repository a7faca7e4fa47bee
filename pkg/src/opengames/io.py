"""JSON file formats for Bayesian games, mixed profiles and joint priors.

Rationals are always strings such as ``"5/16"``.  Every validation failure is a
:class:`ValidationError` whose ``path`` names the offending field.
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple, Union

from .classical import BayesianGame, Profile
from .errors import DomainError, ValidationError
from .prob import Dist, FiniteSet, Kernel, num, product_space, rational_to_str

PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(str(path), f"malformed JSON: {exc}") from exc
    except OSError as exc:
        raise ValidationError(str(path), f"cannot read file: {exc.strerror}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _rational(raw: Any, path: str) -> Fraction:
    if not isinstance(raw, (str, int)) or isinstance(raw, bool):
        raise ValidationError(path, f"expected a rational string, got {raw!r}")
    try:
        return num(raw)
    except DomainError:
        raise ValidationError(path, f"not a rational: {raw!r}") from None


def _obj(raw: Any, path: str) -> dict:
    if not isinstance(raw, dict):
        raise ValidationError(path, "expected an object")
    return raw


def _list(raw: Any, path: str) -> list:
    if not isinstance(raw, list):
        raise ValidationError(path, "expected a list")
    return raw


def _labels(raw: Any, path: str) -> Tuple[str, ...]:
    items = _list(raw, path)
    if not items:
        raise ValidationError(path, "must not be empty")
    for i, x in enumerate(items):
        if not isinstance(x, str):
            raise ValidationError(f"{path}[{i}]", f"labels are strings, got {x!r}")
    if len(set(items)) != len(items):
        raise ValidationError(path, "duplicate labels")
    return tuple(items)


def _per_player(raw: Any, players: Sequence[str], path: str) -> Tuple[Tuple[str, ...], ...]:
    table = _obj(raw, path)
    extra = set(table) - set(players)
    if extra:
        raise ValidationError(f"{path}.{sorted(extra)[0]}", "unknown player")
    out = []
    for p in players:
        if p not in table:
            raise ValidationError(f"{path}.{p}", "missing")
        out.append(_labels(table[p], f"{path}.{p}"))
    return tuple(out)


def _profile_of(raw: Any, players: Sequence[str], allowed: Sequence[Sequence[str]], path: str) -> tuple:
    """A ``{player: label}`` map read as a flat tuple in player order."""
    table = _obj(raw, path)
    extra = set(table) - set(players)
    if extra:
        raise ValidationError(f"{path}.{sorted(extra)[0]}", "unknown player")
    out = []
    for p, labels in zip(players, allowed):
        if p not in table:
            raise ValidationError(f"{path}.{p}", "missing")
        if table[p] not in labels:
            raise ValidationError(f"{path}.{p}", f"undeclared label {table[p]!r}")
        out.append(table[p])
    return tuple(out)


def game_from_json(obj: Any) -> BayesianGame:
    obj = _obj(obj, "$")
    for key in ("players", "types", "actions", "prior", "utilities"):
        if key not in obj:
            raise ValidationError(key, "missing")
    players = _labels(obj["players"], "players")
    types = _per_player(obj["types"], players, "types")
    actions = _per_player(obj["actions"], players, "actions")

    weights: Dict[tuple, Fraction] = {}
    for i, entry in enumerate(_list(obj["prior"], "prior")):
        path = f"prior[{i}]"
        entry = _obj(entry, path)
        t = _profile_of(entry.get("types"), players, types, f"{path}.types")
        if "p" not in entry:
            raise ValidationError(f"{path}.p", "missing")
        p = _rational(entry["p"], f"{path}.p")
        if p < 0:
            raise ValidationError(f"{path}.p", "negative probability")
        if t in weights:
            raise ValidationError(path, f"duplicate type profile {list(t)}")
        weights[t] = p
    total = sum(weights.values(), Fraction(0))
    if total != 1:
        raise ValidationError("prior", f"probabilities sum to {rational_to_str(total)}, not 1")

    utilities: Dict[Tuple[tuple, tuple], Tuple[Fraction, ...]] = {}
    for i, entry in enumerate(_list(obj["utilities"], "utilities")):
        path = f"utilities[{i}]"
        entry = _obj(entry, path)
        t = _profile_of(entry.get("types"), players, types, f"{path}.types")
        a = _profile_of(entry.get("actions"), players, actions, f"{path}.actions")
        u = _obj(entry.get("u"), f"{path}.u")
        extra = set(u) - set(players)
        if extra:
            raise ValidationError(f"{path}.u.{sorted(extra)[0]}", "unknown player")
        missing = [p for p in players if p not in u]
        if missing:
            raise ValidationError(f"{path}.u.{missing[0]}", "missing")
        if (a, t) in utilities:
            raise ValidationError(path, "duplicate utility cell")
        utilities[(a, t)] = tuple(_rational(u[p], f"{path}.u.{p}") for p in players)
    for a in itertools.product(*actions):
        for t in itertools.product(*types):
            if (a, t) not in utilities:
                cell = {"actions": dict(zip(players, a)), "types": dict(zip(players, t))}
                raise ValidationError("utilities", f"missing cell {json.dumps(cell)}")

    type_sets = tuple(FiniteSet(t) for t in types)
    grid = FiniteSet(itertools.product(*types))
    prior = Dist(grid, weights)
    return BayesianGame(players, tuple(FiniteSet(a) for a in actions), type_sets, prior, utilities)


def parse_game(path: PathLike) -> BayesianGame:
    return game_from_json(load_json(path))


def game_to_json(g: BayesianGame) -> dict:
    players = list(g.players)
    return {
        "players": players,
        "types": {p: list(t.elements) for p, t in zip(players, g.types)},
        "actions": {p: list(a.elements) for p, a in zip(players, g.actions)},
        "prior": [
            {"types": dict(zip(players, t)), "p": rational_to_str(p)} for t, p in g.prior.items()
        ],
        "utilities": [
            {
                "types": dict(zip(players, t)),
                "actions": dict(zip(players, a)),
                "u": {p: rational_to_str(x) for p, x in zip(players, g.utilities[(a, t)])},
            }
            for a in g.action_profiles()
            for t in g.type_space
        ],
    }


def serialize_game(g: BayesianGame) -> str:
    return dumps(game_to_json(g))


def games_equal(g1: BayesianGame, g2: BayesianGame) -> bool:
    return (
        g1.players == g2.players
        and g1.actions == g2.actions
        and g1.types == g2.types
        and g1.prior == g2.prior
        and g1.utilities == g2.utilities
    )


def profile_from_json(obj: Any, g: BayesianGame) -> Profile:
    table = _obj(obj, "$")
    extra = set(table) - set(g.players)
    if extra:
        raise ValidationError(sorted(extra)[0], "unknown player")
    out = []
    for p, types, acts in zip(g.players, g.types, g.actions):
        if p not in table:
            raise ValidationError(p, "missing")
        rows = _obj(table[p], p)
        unknown = set(rows) - set(types.elements)
        if unknown:
            raise ValidationError(f"{p}.{sorted(unknown)[0]}", "undeclared type")
        kernel_rows = {}
        for t in types:
            path = f"{p}.{t}"
            if t not in rows:
                raise ValidationError(path, "missing")
            row = _obj(rows[t], path)
            ws = {}
            for a, w in row.items():
                if a not in acts:
                    raise ValidationError(f"{path}.{a}", "undeclared action")
                ws[a] = _rational(w, f"{path}.{a}")
                if ws[a] < 0:
                    raise ValidationError(f"{path}.{a}", "negative probability")
            total = sum(ws.values(), Fraction(0))
            if total != 1:
                raise ValidationError(path, f"probabilities sum to {rational_to_str(total)}, not 1")
            kernel_rows[t] = Dist(acts, ws)
        out.append(Kernel(types, acts, kernel_rows))
    return tuple(out)


def parse_profile(path: PathLike, g: BayesianGame) -> Profile:
    return profile_from_json(load_json(path), g)


def profile_to_json(g: BayesianGame, s: Sequence[Kernel]) -> dict:
    return {
        p: {t: {a: rational_to_str(w) for a, w in k(t).items()} for t in k.domain}
        for p, k in zip(g.players, s)
    }


def prior_from_json(obj: Any) -> Dist:
    """A joint prior ``{"joint": {state: {observation: p}}}`` over states x observations.

    Optional ``states`` and ``observations`` lists fix the label order and may
    declare labels that only carry zero mass.
    """
    obj = _obj(obj, "$")
    joint = _obj(obj.get("joint"), "joint")
    states = list(_labels(obj["states"], "states")) if "states" in obj else []
    observations = list(_labels(obj["observations"], "observations")) if "observations" in obj else []
    declared_s, declared_o = bool(states), bool(observations)
    weights: Dict[tuple, Fraction] = {}
    for s, row in joint.items():
        row = _obj(row, f"joint.{s}")
        if s not in states:
            if declared_s:
                raise ValidationError(f"joint.{s}", "undeclared state")
            states.append(s)
        for x, p in row.items():
            path = f"joint.{s}.{x}"
            if x not in observations:
                if declared_o:
                    raise ValidationError(path, "undeclared observation")
                observations.append(x)
            w = _rational(p, path)
            if w < 0:
                raise ValidationError(path, "negative probability")
            weights[(s, x)] = w
    if not states or not observations:
        raise ValidationError("joint", "must not be empty")
    total = sum(weights.values(), Fraction(0))
    if total != 1:
        raise ValidationError("joint", f"probabilities sum to {rational_to_str(total)}, not 1")
    return Dist(product_space(FiniteSet(states), FiniteSet(observations)), weights)


def parse_prior(path: PathLike) -> Dist:
    return prior_from_json(load_json(path))


def prior_to_json(p: Dist) -> dict:
    states, observations = p.space.factors
    return {
        "states": list(states.elements),
        "observations": list(observations.elements),
        "joint": {s: {x: rational_to_str(p[(s, x)]) for x in observations if p[(s, x)]} for s in states},
    }
