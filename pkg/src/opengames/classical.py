"""Classical Bayesian games and a brute-force Bayesian Nash equilibrium oracle.

This module deliberately avoids the lens/context machinery except in
:func:`encode_to_open_game`, so the two can be cross-checked.  Action and type
profiles are flat tuples ``(a_1, ..., a_n)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .context import Context, make_context
from .errors import BudgetExceeded, DomainError, InvariantViolation, WiringError
from .game import AgentDelta, OpenGame, enumeration_budget, tensor
from .prob import (
    Dist,
    FiniteSet,
    Kernel,
    Value,
    bayes_update,
    dirac,
    numbers,
    product_space,
    pushforward,
)

Profile = Tuple[Kernel, ...]


@dataclass(frozen=True, eq=False)
class BayesianGame:
    """``players`` share a joint ``prior`` over type profiles.

    ``utilities`` maps ``(actions, types)`` to the tuple of every player's payoff.
    """

    players: Tuple[str, ...]
    actions: Tuple[FiniteSet, ...]
    types: Tuple[FiniteSet, ...]
    prior: Dist
    utilities: Dict[Tuple[tuple, tuple], Tuple[Fraction, ...]]

    def __post_init__(self):
        n = len(self.players)
        if len(self.actions) != n or len(self.types) != n:
            raise WiringError("one action set and one type set per player")
        if self.prior.space != self.type_space:
            raise WiringError("prior must live on the full type-profile space")
        for a in self.action_profiles():
            for t in self.type_space:
                us = self.utilities.get((a, t))
                if us is None or len(us) != n:
                    raise DomainError(f"utility missing for actions {a} and types {t}")

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def type_space(self) -> FiniteSet:
        return FiniteSet(itertools.product(*(t.elements for t in self.types)))

    def action_profiles(self):
        return itertools.product(*(a.elements for a in self.actions))

    def utility(self, i: int, a: tuple, theta: tuple) -> Fraction:
        return self.utilities[(tuple(a), tuple(theta))][i]

    def index(self, player) -> int:
        if isinstance(player, int):
            if not 0 <= player < self.n:
                raise DomainError(f"no player {player}")
            return player
        try:
            return self.players.index(player)
        except ValueError:
            raise DomainError(f"unknown player {player!r}") from None

    def type_marginal(self, i: int) -> Dist:
        return pushforward(self.prior, lambda t: t[i], self.types[i])


def check_profile(g: BayesianGame, s: Sequence[Kernel]) -> None:
    if len(s) != g.n:
        raise WiringError(f"profile has {len(s)} strategies for {g.n} players")
    for i, k in enumerate(s):
        if k.domain != g.types[i] or k.codomain != g.actions[i]:
            raise WiringError(f"strategy of {g.players[i]} must be {g.types[i]!r} -> {g.actions[i]!r}")


def ex_post(g: BayesianGame, s: Sequence[Kernel], theta: tuple, i: int) -> Fraction:
    theta = tuple(theta)
    if theta not in g.type_space:
        raise DomainError(f"type profile {theta} is not in the type grid")
    rows = [s[j](theta[j]).items() for j in range(g.n)]
    total = Fraction(0)
    for combo in itertools.product(*rows):
        weight = Fraction(1)
        for _, p in combo:
            weight *= p
        total += weight * g.utility(i, tuple(a for a, _ in combo), theta)
    return total


def _others_given_own(g: BayesianGame, i: int) -> Dist:
    """The prior as a joint over ``(theta_-i profile, theta_i)``."""
    space = product_space(g.type_space, g.types[i])
    return pushforward(g.prior, lambda t: (t, t[i]), space)


def ex_interim(g: BayesianGame, s: Sequence[Kernel], i: int, theta_i: Value) -> Fraction:
    post = bayes_update(_others_given_own(g, i), theta_i)
    return sum((p * ex_post(g, s, t, i) for t, p in post.items()), Fraction(0))


def ex_ante(g: BayesianGame, s: Sequence[Kernel], i: int) -> Fraction:
    by_profile = sum((p * ex_post(g, s, t, i) for t, p in g.prior.items()), Fraction(0))
    by_type = sum((p * ex_interim(g, s, i, ti) for ti, p in g.type_marginal(i).items()), Fraction(0))
    if by_profile != by_type:
        raise InvariantViolation(f"ex ante decompositions disagree: {by_profile} != {by_type}")
    return by_profile


def _with(s: Sequence[Kernel], i: int, k: Kernel) -> list:
    out = list(s)
    out[i] = k
    return out


def pure_action_values(g: BayesianGame, s: Sequence[Kernel], i: int, theta_i: Value) -> Dict[Value, Fraction]:
    """Interim payoff of each pure action of player ``i`` of type ``theta_i``."""
    acts = g.actions[i]
    return {
        a: ex_interim(g, _with(s, i, Kernel.deterministic(g.types[i], acts, lambda _, a=a: a)), i, theta_i)
        for a in acts
    }


def is_bayes_best_response(g: BayesianGame, s: Sequence[Kernel], i: int) -> bool:
    # ex ante optimisation splits into one linear problem per supported type
    check_profile(g, s)
    for theta_i in g.type_marginal(i):
        vals = pure_action_values(g, s, i, theta_i)
        best = max(vals.values())
        if any(vals[a] != best for a in s[i](theta_i).support):
            return False
    return True


def is_bayes_nash(g: BayesianGame, s: Sequence[Kernel]) -> bool:
    return all(is_bayes_best_response(g, s, i) for i in range(g.n))


def pure_strategies(types: FiniteSet, actions: FiniteSet) -> List[Kernel]:
    out = []
    for choice in itertools.product(actions.elements, repeat=len(types)):
        table = dict(zip(types.elements, choice))
        out.append(Kernel.deterministic(types, actions, table.__getitem__))
    return out


def count_pure_profiles(g: BayesianGame) -> int:
    total = 1
    for a, t in zip(g.actions, g.types):
        total *= len(a) ** len(t)
    return total


def enumerate_pure_bayes_nash(g: BayesianGame, budget: Optional[int] = None) -> List[Profile]:
    budget = enumeration_budget() if budget is None else budget
    n = count_pure_profiles(g)
    if n > budget:
        raise BudgetExceeded(n, budget)
    per_player = [pure_strategies(t, a) for t, a in zip(g.types, g.actions)]
    return [tuple(s) for s in itertools.product(*per_player) if is_bayes_nash(g, s)]


def nest(values: Sequence) -> tuple:
    """Left-bracketed nesting ``((v1, v2), v3)`` matching :func:`opengames.game.tensor`."""
    out = values[0]
    for v in values[1:]:
        out = (out, v)
    return out


def unnest(value, n: int) -> list:
    out = []
    for _ in range(n - 1):
        value, last = value
        out.append(last)
    out.append(value)
    return out[::-1]


def nest_space(spaces: Sequence[FiniteSet]) -> FiniteSet:
    out = spaces[0]
    for s in spaces[1:]:
        out = product_space(out, s)
    return out


def payoff_space(g: BayesianGame, i: int) -> FiniteSet:
    return numbers(*(us[i] for us in g.utilities.values()))


def encode_to_open_game(g: BayesianGame) -> Tuple[OpenGame, Context]:
    """The tensor of one observation-forwarding agent per player, with its context.

    The hidden state is the full type profile; each agent observes only its own
    type, and the continuation pays out every player's utility.
    """
    n = g.n
    pays = [payoff_space(g, i) for i in range(n)]
    game = tensor(*(AgentDelta(g.types[i], g.actions[i], pays[i]) for i in range(n)))
    theta = g.type_space
    obs = nest_space(list(g.types))
    hspace = product_space(theta, obs)
    history = pushforward(g.prior, lambda t: (t, nest(list(t)) if n > 1 else t[0]), hspace)
    outs = nest_space(pays)

    def cont(ty):
        t, y = ty
        pairs = unnest(y, n) if n > 1 else [y]
        a = tuple(ai for _, ai in pairs)
        us = [g.utility(i, a, t) for i in range(n)]
        return dirac(nest(us) if n > 1 else us[0], outs)

    k = Kernel.from_fn(product_space(theta, game.target.covariant), outs, cont)
    return game, make_context(theta, history, k)


def to_open_profile(s: Sequence[Kernel]):
    """Regroup a flat per-player profile to match the left-nested tensor."""
    return nest(list(s)) if len(s) > 1 else s[0]


def from_open_profile(sigma, n: int) -> Profile:
    return tuple(unnest(sigma, n)) if n > 1 else (sigma,)
