import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import rng_for, seeds
from opengames import gen
from opengames.classical import (
    BayesianGame,
    count_pure_profiles,
    encode_to_open_game,
    enumerate_pure_bayes_nash,
    ex_ante,
    ex_interim,
    ex_post,
    from_open_profile,
    is_bayes_best_response,
    is_bayes_nash,
    nest,
    pure_strategies,
    to_open_profile,
    unnest,
)
from opengames.errors import BudgetExceeded, ConditioningError, DomainError
from opengames.examples import COIN, biased_coin_prior, education, matching_pennies, prisoners_dilemma, uniform_profile
from opengames.game import AgentDelta, Tensor, enumerate_pure_equilibria, is_equilibrium
from opengames.prob import Dist, FiniteSet, Kernel, dirac, finite_set, num, uniform

STAR = finite_set("*")


def pure(types, acts, table):
    return Kernel.deterministic(types, acts, table.__getitem__)


def const(types, acts, a):
    return Kernel.deterministic(types, acts, lambda _: a)


def guessing_game():
    """Biased coins with the secret coin as a second, passive player's type."""
    players = ("guesser", "nature")
    actions = (COIN, finite_set("-"))
    types = (COIN, COIN)
    # prior over (guesser's coin, secret coin)
    prior_space = FiniteSet(itertools.product(COIN, COIN))
    prior = Dist(prior_space, {(o, s): p for (s, o), p in biased_coin_prior().items()})
    us = {((a, "-"), (o, s)): (F(int(a == s)), F(0)) for a in COIN for o in COIN for s in COIN}
    return BayesianGame(players, actions, types, prior, us)


def pooling_game():
    """Sender of type a (2/3) or b (1/3) sends m1 or m2; the receiver picks L or R blind."""
    players = ("sender", "receiver")
    types = (finite_set("a", "b"), STAR)
    actions = (finite_set("m1", "m2"), finite_set("L", "R"))
    grid = FiniteSet(itertools.product(*(t.elements for t in types)))
    prior = Dist(grid, {("a", "*"): F(2, 3), ("b", "*"): F(1, 3)})
    us = {}
    for m, r in itertools.product(actions[0], actions[1]):
        for t in grid:
            sender = (2 if r == "R" else 0) - (1 if m == "m2" else 0)
            receiver = (1 if t[0] == "a" else -1) if r == "R" else 0
            us[((m, r), t)] = (num(sender), num(receiver))
    return BayesianGame(players, actions, types, prior, us)


def test_ex_post_examples():
    g = guessing_game()
    copy = pure(COIN, COIN, {"H": "H", "T": "T"})
    s = (copy, const(COIN, finite_set("-"), "-"))
    assert ex_post(g, s, ("H", "H"), 0) == 1
    assert ex_post(g, s, ("H", "T"), 0) == 0
    mp = matching_pennies()
    for t in mp.type_space:
        assert ex_post(mp, uniform_profile(mp), t, 0) == 0
    pd = prisoners_dilemma()
    dd = tuple(const(STAR, a, "D") for a in pd.actions)
    assert ex_post(pd, dd, ("*", "*"), 1) == 1
    with pytest.raises(DomainError):
        ex_post(pd, dd, ("x", "*"), 0)


def test_ex_interim_examples():
    g = guessing_game()
    copy = pure(COIN, COIN, {"H": "H", "T": "T"})
    s = (copy, const(COIN, finite_set("-"), "-"))
    assert ex_interim(g, s, 0, "H") == F(5, 8)
    pd = prisoners_dilemma()
    cd = (const(STAR, pd.actions[0], "C"), const(STAR, pd.actions[1], "D"))
    assert ex_interim(pd, cd, 0, "*") == ex_post(pd, cd, ("*", "*"), 0) == 0


def test_ex_interim_zero_mass_type():
    g = gen.bayesian_game(rng_for(3), n_players=(2,), max_types=1)
    types = (finite_set("t0", "t1"), g.types[1])
    grid = FiniteSet(itertools.product(*(t.elements for t in types)))
    prior = dirac(("t0", g.types[1].elements[0]), grid)
    us = {(a, t): (F(0), F(0)) for a in g.action_profiles() for t in grid}
    zero = BayesianGame(g.players, g.actions, types, prior, us)
    s = tuple(Kernel(t, a, {x: uniform(a) for x in t}) for t, a in zip(zero.types, zero.actions))
    with pytest.raises(ConditioningError):
        ex_interim(zero, s, 0, "t1")


def test_ex_ante_examples():
    g = guessing_game()
    copy = pure(COIN, COIN, {"H": "H", "T": "T"})
    assert ex_ante(g, (copy, const(COIN, finite_set("-"), "-")), 0) == F(5, 8)
    pd = prisoners_dilemma()
    flat = BayesianGame(pd.players, pd.actions, pd.types, pd.prior,
                        {k: (F(7, 3), F(7, 3)) for k in pd.utilities})
    assert ex_ante(flat, uniform_profile(flat), 1) == F(7, 3)


def test_dominance():
    pd = prisoners_dilemma()
    a1, a2 = pd.actions
    for other in ("C", "D"):
        assert is_bayes_best_response(pd, (const(STAR, a1, "D"), const(STAR, a2, other)), 0)
        assert not is_bayes_best_response(pd, (const(STAR, a1, "C"), const(STAR, a2, other)), 0)
    half = Kernel(STAR, a1, {"*": uniform(a1)})
    assert not is_bayes_best_response(pd, (half, const(STAR, a2, "D")), 0)


def test_matching_pennies_uniform():
    mp = matching_pennies()
    u = uniform_profile(mp)
    assert is_bayes_best_response(mp, u, 0) and is_bayes_nash(mp, u)
    assert enumerate_pure_bayes_nash(mp) == []


def test_prisoners_dilemma_unique_equilibrium():
    pd = prisoners_dilemma()
    eqs = enumerate_pure_bayes_nash(pd)
    assert len(eqs) == 1
    assert all(k("*") == dirac("D", a) for k, a in zip(eqs[0], pd.actions))


def test_pooling_equilibrium_by_hand():
    g = pooling_game()
    # sender: m1 is worth 2 and m2 is worth 1 against R; receiver: R is worth 2/3 - 1/3 = 1/3 > 0
    pooling = (pure(g.types[0], g.actions[0], {"a": "m1", "b": "m1"}), const(STAR, g.actions[1], "R"))
    assert is_bayes_nash(g, pooling)
    assert enumerate_pure_bayes_nash(g) == [pooling]


def test_zero_probability_types_are_unconstrained():
    g = pooling_game()
    grid = g.type_space
    prior = dirac(("a", "*"), grid)
    g0 = BayesianGame(g.players, g.actions, g.types, prior, g.utilities)
    classical = enumerate_pure_bayes_nash(g0)
    # type b never occurs, so both of its messages appear
    assert {s[0]("b").support[0] for s in classical} == {"m1", "m2"}
    og, c = encode_to_open_game(g0)
    assert [from_open_profile(s, 2) for s in enumerate_pure_equilibria(og, c)] == classical


def test_budget():
    g = pooling_game()
    assert count_pure_profiles(g) == 8
    with pytest.raises(BudgetExceeded):
        enumerate_pure_bayes_nash(g, budget=4)


def test_pure_strategies_enumeration():
    ks = pure_strategies(finite_set("a", "b"), finite_set("x", "y", "z"))
    assert len(ks) == 9 and len(set(ks)) == 9


def test_nesting_roundtrip():
    assert nest([1, 2, 3]) == ((1, 2), 3)
    assert unnest(((1, 2), 3), 3) == [1, 2, 3]
    s = tuple(const(STAR, a, a.elements[0]) for a in prisoners_dilemma().actions)
    assert from_open_profile(to_open_profile(s), 2) == s


def test_encoding_shape():
    g = education()
    og, c = encode_to_open_game(g)
    assert isinstance(og, Tensor) and all(isinstance(x, AgentDelta) for x in (og.left, og.right))
    assert c.theta == g.type_space
    assert c.history[(("*", "t"), ("*", "t"))] == F(1, 10)
    assert c.history[(("*", "nt"), ("*", "nt"))] == F(9, 10)


def test_encoding_uses_full_utility_signature():
    # the receiver's payoff depends on the sender's type, which it never observes
    g = pooling_game()
    og, c = encode_to_open_game(g)
    blind_l = (pure(g.types[0], g.actions[0], {"a": "m1", "b": "m1"}), const(STAR, g.actions[1], "L"))
    assert not is_equilibrium(og, c, to_open_profile(blind_l))
    assert not is_bayes_nash(g, blind_l)


@given(seeds)
def test_ex_ante_decompositions_agree(seed):
    rng = rng_for(seed)
    g = gen.bayesian_game(rng)
    s = gen.mixed_profile(rng, g)
    for i in range(g.n):
        by_profile = sum((p * ex_post(g, s, t, i) for t, p in g.prior.items()), F(0))
        assert ex_ante(g, s, i) == by_profile


@given(seeds)
def test_oracle_equivalence(seed):
    rng = rng_for(seed)
    g = gen.bayesian_game(rng)
    og, c = encode_to_open_game(g)
    assert [from_open_profile(s, g.n) for s in enumerate_pure_equilibria(og, c)] == enumerate_pure_bayes_nash(g)
    for _ in range(2):
        s = gen.mixed_profile(rng, g)
        assert is_bayes_nash(g, s) == is_equilibrium(og, c, to_open_profile(s))
