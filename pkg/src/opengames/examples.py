"""Built-in scenarios with JSON-ready reports."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .classical import (
    BayesianGame,
    encode_to_open_game,
    enumerate_pure_bayes_nash,
    from_open_profile,
    is_bayes_nash,
    to_open_profile,
)
from .context import Context, closed_context, make_context
from .errors import InvariantViolation
from .game import (
    Agent,
    Computation,
    Counit,
    OpenGame,
    enumerate_pure_equilibria,
    expected_payoffs,
    identity_game,
    is_equilibrium,
    pure_kernels,
    seq,
    Tensor,
)
from .lens import LensInterface
from .prob import (
    Dist,
    FiniteSet,
    Kernel,
    Unit,
    UNIT,
    bayes_update,
    bind,
    copy_kernel,
    dirac,
    dist_to_json,
    finite_set,
    num,
    numbers,
    product,
    product_space,
    rational_to_str,
    uniform,
)

COIN = finite_set("H", "T")


# -- biased coins ------------------------------------------------------------

def biased_coin_prior() -> Dist:
    """Joint law of ``(secret coin, observed coin)``.

    The bias side is a fair coin; given it, both coins land on that side with
    probability 3/4, independently.
    """
    bias = uniform(COIN)
    flip = Kernel(COIN, COIN, {
        "H": Dist(COIN, {"H": Fraction(3, 4), "T": Fraction(1, 4)}),
        "T": Dist(COIN, {"H": Fraction(1, 4), "T": Fraction(3, 4)}),
    })
    return bind(bias, lambda b: product(flip(b), flip(b)), product_space(COIN, COIN))


def biased_coins() -> Tuple[Agent, Context]:
    """A single agent guessing the secret coin, paid 1 for a correct guess."""
    payoffs = numbers(0, 1)
    agent = Agent(COIN, COIN, payoffs)
    cont = Kernel.deterministic(product_space(COIN, COIN), payoffs,
                                lambda sy: Fraction(int(sy[0] == sy[1])))
    return agent, make_context(COIN, biased_coin_prior(), cont)


def copy_strategy() -> Kernel:
    return Kernel.deterministic(COIN, COIN, lambda x: x)


def strategy_name(k: Kernel) -> str:
    table = {x: k(x).support[0] for x in COIN}
    names = {("H", "T"): "copy", ("T", "H"): "flip", ("H", "H"): "always-H", ("T", "T"): "always-T"}
    return names[(table["H"], table["T"])]


def biased_coins_report() -> dict:
    agent, c = biased_coins()
    prior = biased_coin_prior()
    posterior = {x: dist_to_json(bayes_update(prior, x)) for x in COIN}
    eu = {x: {y: rational_to_str(v) for y, v in expected_payoffs(c, x).items()} for x in COIN}
    optimal = [strategy_name(k) for k in pure_kernels(COIN, COIN) if is_equilibrium(agent, c, k)]
    return {
        "scenario": "biased-coins",
        "prior": {f"{s},{x}": rational_to_str(p) for (s, x), p in prior.items()},
        "observed": "H",
        "posterior": posterior["H"],
        "posterior_by_observation": posterior,
        "expected_payoff": eu,
        "optimal_strategies": optimal,
    }


# -- classical games -----------------------------------------------------------

def normal_form(players: Tuple[str, ...], actions: Tuple[Tuple[str, ...], ...],
                payoff: Callable[[tuple], Tuple[int, ...]]) -> BayesianGame:
    """A complete-information game: one type ``"*"`` per player."""
    types = tuple(finite_set("*") for _ in players)
    grid = FiniteSet([tuple("*" for _ in players)])
    us = {(a, grid.elements[0]): tuple(num(x) for x in payoff(a)) for a in itertools.product(*actions)}
    return BayesianGame(players, tuple(FiniteSet(a) for a in actions), types, dirac(grid.elements[0], grid), us)


_PD = {("C", "C"): (2, 2), ("C", "D"): (0, 3), ("D", "C"): (3, 0), ("D", "D"): (1, 1)}
_MP = {("H", "H"): (1, -1), ("H", "T"): (-1, 1), ("T", "H"): (-1, 1), ("T", "T"): (1, -1)}


def prisoners_dilemma() -> BayesianGame:
    return normal_form(("p1", "p2"), (("C", "D"), ("C", "D")), _PD.__getitem__)


def matching_pennies() -> BayesianGame:
    return normal_form(("p1", "p2"), (("H", "T"), ("H", "T")), _MP.__getitem__)


def education() -> BayesianGame:
    """Employer with a trivial type; applicant talented (``t``) with probability 1/10.

    Payoff numbers are illustrative: a high wage is worth 2 to the applicant,
    university costs 1 if talented and 3 otherwise, and the employer gains 1
    from paying talent highly and loses 1 paying an untalented applicant highly.
    """
    players = ("employer", "applicant")
    types = (finite_set("*"), finite_set("t", "nt"))
    actions = (finite_set("h", "l"), finite_set("u", "nu"))
    grid = FiniteSet(itertools.product(*(t.elements for t in types)))
    prior = Dist(grid, {("*", "t"): Fraction(1, 10), ("*", "nt"): Fraction(9, 10)})
    us = {}
    for wage, study in itertools.product(actions[0], actions[1]):
        for t in grid:
            talented = t[1] == "t"
            employer = (1 if talented else -1) if wage == "h" else 0
            applicant = (2 if wage == "h" else 0) - ((1 if talented else 3) if study == "u" else 0)
            us[((wage, study), t)] = (num(employer), num(applicant))
    return BayesianGame(players, actions, types, prior, us)


def solve_pure(g: BayesianGame) -> List[tuple]:
    """Pure Bayesian Nash equilibria, cross-checked between the two engines."""
    classical = enumerate_pure_bayes_nash(g)
    og, c = encode_to_open_game(g)
    compositional = [from_open_profile(s, g.n) for s in enumerate_pure_equilibria(og, c)]
    if classical != compositional:
        raise InvariantViolation("classical and compositional equilibrium sets differ")
    return classical


def check_profile_both(g: BayesianGame, s) -> Dict[str, bool]:
    a = is_bayes_nash(g, s)
    og, c = encode_to_open_game(g)
    b = is_equilibrium(og, c, to_open_profile(s))
    return {"classical": a, "compositional": b, "agree": a == b}


def uniform_profile(g: BayesianGame) -> tuple:
    return tuple(Kernel(t, a, {x: uniform(a) for x in t}) for t, a in zip(g.types, g.actions))


def _classical_report(name: str, g: BayesianGame) -> dict:
    from .io import profile_to_json

    report = {"scenario": name, "pure_equilibria": [profile_to_json(g, s) for s in solve_pure(g)]}
    report["uniform_profile"] = check_profile_both(g, uniform_profile(g))
    return report


# -- sequential threat ---------------------------------------------------------

ENTRY = finite_set("In", "Out")
RESPONSE = finite_set("Fight", "Accommodate")
_THREAT = {
    ("Out", "Fight"): (0, 2),
    ("Out", "Accommodate"): (0, 2),
    ("In", "Fight"): (-1, -1),
    ("In", "Accommodate"): (1, 1),
}


def sequential_threat() -> Tuple[OpenGame, Context]:
    """Entrant moves, the incumbent observes the move and responds.

    ``counit . (id x incumbent) . copy . entrant``; the game is closed.
    """
    pay_e = numbers(*(u[0] for u in _THREAT.values()))
    pay_i = numbers(*(u[1] for u in _THREAT.values()))
    entrant = Agent(Unit, ENTRY, pay_e)
    incumbent = Agent(ENTRY, RESPONSE, pay_i)
    fan_out = Computation(
        copy_kernel(ENTRY),
        Kernel.deterministic(product_space(pay_e, Unit), pay_e, lambda r: r[0]),
    )
    both = Tensor(identity_game(LensInterface(ENTRY, pay_e)), incumbent)
    outcome = product_space(ENTRY, RESPONSE)
    pays = product_space(pay_e, pay_i)
    counit = Counit(Kernel.deterministic(outcome, pays, lambda ab: tuple(num(x) for x in _THREAT[ab])))
    return seq(entrant, fan_out, both, counit), closed_context()


def threat_profile(entry: str, response: Dict[str, str]) -> tuple:
    sigma_e = Kernel.deterministic(Unit, ENTRY, lambda _: entry)
    sigma_i = Kernel.deterministic(ENTRY, RESPONSE, response.__getitem__)
    return (((sigma_e, None), (None, sigma_i)), None)


def _describe_threat(sigma) -> dict:
    ((sigma_e, _), (_, sigma_i)), _ = sigma
    return {
        "entrant": sigma_e(UNIT).support[0],
        "incumbent": {a: sigma_i(a).support[0] for a in ENTRY},
    }


def sequential_threat_report() -> dict:
    g, c = sequential_threat()
    eqs = [_describe_threat(s) for s in enumerate_pure_equilibria(g, c)]
    threat = {"entrant": "Out", "incumbent": {"In": "Fight", "Out": "Accommodate"}}
    return {
        "scenario": "sequential-threat",
        "pure_equilibria": eqs,
        "non_credible_threat": threat,
        "non_credible_threat_is_equilibrium": threat in eqs,
    }


SCENARIOS: Dict[str, Callable[[], dict]] = {
    "biased-coins": biased_coins_report,
    "prisoners-dilemma": lambda: _classical_report("prisoners-dilemma", prisoners_dilemma()),
    "matching-pennies": lambda: _classical_report("matching-pennies", matching_pennies()),
    "education": lambda: _classical_report("education", education()),
    "sequential-threat": sequential_threat_report,
}
