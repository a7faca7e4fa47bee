"""Seeded random instances for the law suites and cross-validation.

Everything takes an explicit :class:`random.Random` so runs are reproducible.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .classical import BayesianGame
from .context import Context, make_context
from .lens import Lens, LensInterface, make_lens
from .prob import Dist, FiniteSet, Kernel, num, product_space

ATOMS = "abcdefgh"


def space(rng: random.Random, max_size: int = 3, prefix: str = "") -> FiniteSet:
    n = rng.randint(1, max_size)
    tag = prefix or rng.choice(ATOMS)
    return FiniteSet(f"{tag}{i}" for i in range(n))


def dist(rng: random.Random, sp: FiniteSet, max_den: int = 4, dirac_bias: float = 0.0) -> Dist:
    """A distribution whose weights have denominator at most ``max_den``."""
    elems = sp.elements
    if rng.random() < dirac_bias:
        return Dist(sp, {rng.choice(elems): Fraction(1)})
    den = rng.randint(1, max_den)
    counts = [0] * len(elems)
    for _ in range(den):
        counts[rng.randrange(len(elems))] += 1
    return Dist(sp, {x: Fraction(c, den) for x, c in zip(elems, counts)})


def kernel(rng: random.Random, dom: FiniteSet, cod: FiniteSet, max_den: int = 4, dirac_bias: float = 0.3) -> Kernel:
    return Kernel(dom, cod, {x: dist(rng, cod, max_den, dirac_bias) for x in dom})


def dirac_kernel(rng: random.Random, dom: FiniteSet, cod: FiniteSet) -> Kernel:
    table = {x: rng.choice(cod.elements) for x in dom}
    return Kernel.deterministic(dom, cod, table.__getitem__)


def interface(rng: random.Random, max_size: int = 3) -> LensInterface:
    return LensInterface(space(rng, max_size, rng.choice("xyz")), space(rng, max_size, rng.choice("rsq")))


def lens(rng: random.Random, source: LensInterface, target: LensInterface,
         max_residual: int = 3, deterministic: bool = False) -> Lens:
    res = space(rng, max_residual, "m")
    fwd_cod = product_space(res, target.covariant)
    bwd_dom = product_space(res, target.contravariant)
    if deterministic:
        fwd = dirac_kernel(rng, source.covariant, fwd_cod)
        bwd = dirac_kernel(rng, bwd_dom, source.contravariant)
    else:
        fwd = kernel(rng, source.covariant, fwd_cod)
        bwd = kernel(rng, bwd_dom, source.contravariant)
    return make_lens(source, target, res, fwd, bwd)


def context(rng: random.Random, observations: FiniteSet, actions: FiniteSet, payoffs: FiniteSet,
            max_theta: int = 3) -> Context:
    theta = space(rng, max_theta, "t")
    hist = dist(rng, product_space(theta, observations), max_den=6)
    return make_context(theta, hist, kernel(rng, product_space(theta, actions), payoffs))


def bayesian_game(rng: random.Random, n_players: Sequence[int] = (2, 3), max_actions: int = 3,
                  max_types: int = 2, utilities: Sequence[int] = range(-2, 3)) -> BayesianGame:
    n = rng.choice(list(n_players))
    players = tuple(f"p{i + 1}" for i in range(n))
    actions = tuple(FiniteSet(f"a{j}" for j in range(rng.randint(1, max_actions))) for _ in range(n))
    types = tuple(FiniteSet(f"t{j}" for j in range(rng.randint(1, max_types))) for _ in range(n))
    grid = list(itertools.product(*(t.elements for t in types)))
    raw = [rng.choice([0, 1, 1, 2, 3]) for _ in grid]
    if not any(raw):
        raw[rng.randrange(len(raw))] = 1
    total = sum(raw)
    tspace = FiniteSet(grid)
    prior = Dist(tspace, {t: Fraction(w, total) for t, w in zip(grid, raw)})
    us = {}
    for a in itertools.product(*(x.elements for x in actions)):
        for t in grid:
            us[(a, t)] = tuple(num(rng.choice(list(utilities))) for _ in range(n))
    return BayesianGame(players, actions, types, prior, us)


def mixed_profile(rng: random.Random, g: BayesianGame, max_den: int = 4) -> tuple:
    return tuple(kernel(rng, t, a, max_den=max_den, dirac_bias=0.2) for t, a in zip(g.types, g.actions))
