from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import rng_for, seeds
from opengames import gen
from opengames.errors import ConditioningError, ConstructionError, DomainError, WiringError
from opengames.examples import COIN, biased_coin_prior
from opengames.prob import (
    LEFT,
    RIGHT,
    UNIT,
    Dist,
    Kernel,
    Unit,
    bayes_update,
    bind,
    copy_kernel,
    delete_kernel,
    dirac,
    dist_from_json,
    dist_to_json,
    expectation,
    finite_set,
    from_weights,
    identity_kernel,
    kernel_compose,
    kernel_tensor,
    marginal,
    num,
    numbers,
    product,
    product_space,
    pushforward,
    uniform,
    value_from_json,
    value_to_json,
)

HT = product_space(COIN, COIN)
P_BIASED = from_weights(HT, {("H", "H"): 5, ("T", "T"): 5, ("T", "H"): 3, ("H", "T"): 3})
FAIR = uniform(COIN)


def test_num_rejects_floats_and_bools():
    assert num("5/16") == F(5, 16)
    with pytest.raises(DomainError):
        num(0.5)
    with pytest.raises(DomainError):
        num(True)


def test_dirac():
    assert dict(dirac("H", COIN).items()) == {"H": 1}
    assert dict(dirac(("H", "T"), HT).items()) == {("H", "T"): 1}
    assert expectation(dirac(F(3), numbers(3))) == 3
    with pytest.raises(DomainError):
        dirac("X", COIN)


def test_dist_invariants():
    with pytest.raises(ConstructionError):
        Dist(COIN, {"H": F(1, 2)})
    with pytest.raises(ConstructionError):
        Dist(COIN, {"H": F(3, 2), "T": F(-1, 2)})
    d = Dist(COIN, {"H": F(1), "T": F(0)})
    assert d.support == ("H",)


def test_from_weights():
    assert from_weights(COIN, {"H": 5, "T": 3}) == Dist(COIN, {"H": F(5, 8), "T": F(3, 8)})
    assert from_weights(COIN, {"H": 1}) == dirac("H", COIN)
    assert P_BIASED[("H", "H")] == F(5, 16)
    with pytest.raises(ConstructionError):
        from_weights(COIN, {"H": -1, "T": 2})
    with pytest.raises(ConstructionError):
        from_weights(COIN, {"H": 0})


def test_biased_prior_matches_mixture_of_biases():
    assert biased_coin_prior() == P_BIASED


def test_pushforward():
    d = Dist(COIN, {"H": F(5, 8), "T": F(3, 8)})
    assert pushforward(d, lambda x: x, COIN) == d
    pairs = Dist(HT, {("H", "H"): F(1, 2), ("H", "T"): F(1, 2)})
    assert pushforward(pairs, lambda xy: xy[0], COIN) == dirac("H", COIN)
    eq = finite_set("eq", "neq")
    assert pushforward(P_BIASED, lambda xy: "eq" if xy[0] == xy[1] else "neq", eq) == Dist(
        eq, {"eq": F(5, 8), "neq": F(3, 8)}
    )
    with pytest.raises(DomainError):
        pushforward(d, lambda x: "Z", COIN)


def test_bind_total_probability():
    pay = numbers(0, 1)
    k = Kernel(COIN, pay, {"H": Dist(pay, {1: F(3, 4), 0: F(1, 4)}), "T": Dist(pay, {1: F(1, 4), 0: F(3, 4)})})
    assert bind(FAIR, k) == uniform(pay)
    with pytest.raises(WiringError):
        bind(dirac(F(0), pay), k)


def test_product_and_marginal():
    assert product(dirac("H", COIN), dirac("T", COIN)) == dirac(("H", "T"), HT)
    assert product(FAIR, FAIR) == uniform(HT)
    assert marginal(P_BIASED, LEFT) == FAIR
    assert marginal(dirac(("H", "T"), HT), RIGHT) == dirac("T", COIN)
    with pytest.raises(WiringError):
        marginal(FAIR, LEFT)


def test_expectation():
    assert expectation(Dist(numbers(0, 1), {1: F(5, 8), 0: F(3, 8)})) == F(5, 8)
    assert expectation(Dist(numbers(-2, 2), {2: F(1, 2), -2: F(1, 2)})) == 0
    with pytest.raises(WiringError):
        expectation(FAIR)


def test_bayes_update_biased_coins():
    assert bayes_update(P_BIASED, "H") == Dist(COIN, {"H": F(5, 8), "T": F(3, 8)})
    assert bayes_update(P_BIASED, "T") == Dist(COIN, {"T": F(5, 8), "H": F(3, 8)})
    q = Dist(COIN, {"H": F(1, 3), "T": F(2, 3)})
    assert bayes_update(product(q, dirac("H", COIN)), "H") == q


def test_bayes_update_zero_mass():
    p = product(FAIR, dirac("H", COIN))
    with pytest.raises(ConditioningError):
        bayes_update(p, "T")


def test_kernel_compose():
    k = Kernel(COIN, COIN, {"H": Dist(COIN, {"H": F(3, 4), "T": F(1, 4)}),
                             "T": Dist(COIN, {"H": F(1, 4), "T": F(3, 4)})})
    assert kernel_compose(identity_kernel(COIN), k) == k
    two = kernel_compose(k, k)
    assert two("H") == Dist(COIN, {"H": F(5, 8), "T": F(3, 8)})
    assert two("T") == Dist(COIN, {"H": F(3, 8), "T": F(5, 8)})
    flip = Kernel.deterministic(COIN, COIN, lambda x: "T" if x == "H" else "H")
    assert kernel_compose(flip, flip) == identity_kernel(COIN)
    with pytest.raises(WiringError):
        kernel_compose(k, copy_kernel(COIN))


def test_kernel_tensor():
    assert kernel_tensor(identity_kernel(COIN), identity_kernel(COIN)) == identity_kernel(HT)
    fair = Kernel(COIN, COIN, {x: FAIR for x in COIN})
    t = kernel_tensor(fair, identity_kernel(COIN))
    assert marginal(t(("H", "T")), LEFT) == FAIR


def test_copy_and_delete():
    assert copy_kernel(COIN)("H") == dirac(("H", "H"), HT)
    assert delete_kernel(COIN)("T") == dirac(UNIT, Unit)
    correlated = bind(FAIR, copy_kernel(COIN))
    assert correlated == Dist(HT, {("H", "H"): F(1, 2), ("T", "T"): F(1, 2)})
    assert correlated != product(FAIR, FAIR)


def test_kernel_row_validation():
    with pytest.raises(WiringError):
        Kernel(COIN, COIN, {"H": FAIR})
    lazy = Kernel.from_fn(COIN, COIN, lambda x: dirac(F(1), numbers(1)))
    with pytest.raises(WiringError):
        lazy("H")
    with pytest.raises(DomainError):
        identity_kernel(COIN)("Z")


def test_json_roundtrip():
    assert dist_to_json(bayes_update(P_BIASED, "H")) == {"H": "5/8", "T": "3/8"}
    assert dist_from_json(dist_to_json(P_BIASED), HT) == P_BIASED
    nested = product_space(HT, numbers(F(1, 2)))
    v = (("H", "T"), F(1, 2))
    assert value_from_json(value_to_json(v), nested) == v


@given(seeds)
def test_every_operation_normalises(seed):
    rng = rng_for(seed)
    x, y = gen.space(rng, 5, "x"), gen.space(rng, 5, "y")
    d, k = gen.dist(rng, x, 7), gen.kernel(rng, x, y)
    for out in (bind(d, k), product(d, k(x.elements[0])), marginal(product(d, d), RIGHT)):
        assert sum(p for _, p in out.items()) == 1
        assert all(p > 0 for _, p in out.items())


@given(seeds)
def test_monad_laws(seed):
    from opengames import laws

    rng = rng_for(seed)
    assert laws.monad_left_unit(rng)
    assert laws.monad_right_unit(rng)
    assert laws.monad_associativity(rng)


@given(seeds)
def test_commutativity_and_update_naturality(seed):
    from opengames import laws

    rng = rng_for(seed)
    assert laws.commutativity(rng)
    assert laws.update_naturality(rng)
    assert laws.expectation_linearity(rng)
    assert laws.marginal_of_product(rng)
