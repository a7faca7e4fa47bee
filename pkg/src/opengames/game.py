"""Open games as combinator trees: play, best response, equilibria, simulations.

Strategy profiles mirror the game tree as plain Python data:

* ``Agent`` / ``AgentDelta`` -- a :class:`~opengames.prob.Kernel` ``obs -> act``;
* ``Atom`` -- one of the atom's lenses;
* ``Computation`` / ``Counit`` / ``Structural`` -- ``None``;
* ``Seq`` / ``Tensor`` -- a pair ``(left, right)``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Any, Callable, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .context import (
    CanonicalContext,
    Context,
    canonicalize_context,
    posterior_continuation,
    seq_local_first,
    seq_local_second,
    tensor_local_left,
    tensor_local_right,
)
from .errors import BudgetExceeded, ProfileShapeError, ValidationError, WiringError
from .lens import (
    Lens,
    LensInterface,
    behavioral_eq,
    counit_lens,
    lens_compose,
    lens_tensor,
    make_lens,
    pair_lens,
    structural_lens,
)
from .prob import (
    RIGHT,
    UNIT,
    FiniteSet,
    Kernel,
    Unit,
    Value,
    expectation,
    marginal,
    product_space,
    pushforward,
)

DEFAULT_BUDGET = 10**6
BUDGET_ENV = "OPENGAMES_BUDGET"


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(BUDGET_ENV, f"not an integer: {raw!r}") from None
    if value < 0:
        raise ValidationError(BUDGET_ENV, "must be non-negative")
    return value


class OpenGame:
    source: LensInterface
    target: LensInterface


@dataclass(frozen=True, eq=False)
class Computation(OpenGame):
    """``<f, g> : (X,S) -> (Y,R)`` with no strategic choice."""

    f: Kernel
    g: Kernel

    @property
    def source(self):
        return LensInterface(self.f.domain, self.g.codomain)

    @property
    def target(self):
        return LensInterface(self.f.codomain, self.g.domain)


@dataclass(frozen=True, eq=False)
class Counit(OpenGame):
    """Closes a diagram: ``(X, S) -> I`` answering ``x`` with ``f(x)``."""

    f: Kernel

    @property
    def source(self):
        return LensInterface(self.f.domain, self.f.codomain)

    @property
    def target(self):
        return LensInterface(Unit, Unit)


@dataclass(frozen=True, eq=False)
class Agent(OpenGame):
    """Bayesian agent ``(obs, I) -> (act, payoffs)``.

    ``payoffs`` is the finite set of numbers the agent can receive.
    """

    obs: FiniteSet
    act: FiniteSet
    payoffs: FiniteSet

    @property
    def source(self):
        return LensInterface(self.obs, Unit)

    @property
    def target(self):
        return LensInterface(self.act, self.payoffs)


@dataclass(frozen=True, eq=False)
class AgentDelta(OpenGame):
    """Agent that also forwards its observation: ``(X, I) -> (X x Y, payoffs)``."""

    obs: FiniteSet
    act: FiniteSet
    payoffs: FiniteSet

    @property
    def source(self):
        return LensInterface(self.obs, Unit)

    @property
    def target(self):
        return LensInterface(product_space(self.obs, self.act), self.payoffs)


@dataclass(frozen=True, eq=False)
class Atom(OpenGame):
    """A user-defined atom: a finite strategy set of lenses and a preference.

    ``preference`` receives a :class:`CanonicalContext` and returns the lenses
    it accepts.
    """

    source_interface: LensInterface
    target_interface: LensInterface
    lenses: Tuple[Lens, ...]
    preference: Callable[[CanonicalContext], Iterable[Lens]]

    @property
    def source(self):
        return self.source_interface

    @property
    def target(self):
        return self.target_interface


@dataclass(frozen=True, eq=False)
class Structural(OpenGame):
    kind: str
    interfaces: Tuple[LensInterface, ...]
    lens: Lens = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lens", structural_lens(self.kind, *self.interfaces))

    @property
    def source(self):
        return self.lens.source

    @property
    def target(self):
        return self.lens.target


@dataclass(frozen=True, eq=False)
class Seq(OpenGame):
    """``second . first``: ``first`` plays, then ``second``."""

    first: OpenGame
    second: OpenGame

    def __post_init__(self):
        if self.first.target != self.second.source:
            raise WiringError(f"cannot sequence: {self.first.target!r} vs {self.second.source!r}")

    @property
    def source(self):
        return self.first.source

    @property
    def target(self):
        return self.second.target


@dataclass(frozen=True, eq=False)
class Tensor(OpenGame):
    left: OpenGame
    right: OpenGame

    @property
    def source(self):
        return self.left.source.tensor(self.right.source)

    @property
    def target(self):
        return self.left.target.tensor(self.right.target)


def identity_game(interface: LensInterface) -> Computation:
    from .prob import identity_kernel

    return Computation(identity_kernel(interface.covariant), identity_kernel(interface.contravariant))


def seq(*games: OpenGame) -> OpenGame:
    """Left-to-right sequential composite, bracketed to the left."""
    g = games[0]
    for h in games[1:]:
        g = Seq(g, h)
    return g


def tensor(*games: OpenGame) -> OpenGame:
    """n-fold tensor, bracketed to the left."""
    g = games[0]
    for h in games[1:]:
        g = Tensor(g, h)
    return g


def _shape_error(path: str, msg: str) -> ProfileShapeError:
    return ProfileShapeError(f"at {path or '<root>'}: {msg}")


def _check_agent_kernel(g, k, path):
    if not isinstance(k, Kernel):
        raise _shape_error(path, f"agent expects a Kernel, got {type(k).__name__}")
    if k.domain != g.obs or k.codomain != g.act:
        raise _shape_error(path, f"agent kernel is {k.domain!r} -> {k.codomain!r}, expected {g.obs!r} -> {g.act!r}")


def check_profile(g: OpenGame, sigma: Any, path: str = "") -> None:
    if isinstance(g, (Agent, AgentDelta)):
        _check_agent_kernel(g, sigma, path)
    elif isinstance(g, Atom):
        if not isinstance(sigma, Lens):
            raise _shape_error(path, "atom expects a Lens")
    elif isinstance(g, (Seq, Tensor)):
        if not (isinstance(sigma, tuple) and len(sigma) == 2):
            raise _shape_error(path, f"{type(g).__name__} expects a pair")
        a, b = (g.first, g.second) if isinstance(g, Seq) else (g.left, g.right)
        check_profile(a, sigma[0], path + ".0")
        check_profile(b, sigma[1], path + ".1")
    elif sigma is not None:
        raise _shape_error(path, f"{type(g).__name__} has a trivial strategy set; expected None")


def _agent_lens(g: Agent, sigma: Kernel) -> Lens:
    ay = product_space(Unit, g.act)
    fwd = Kernel.from_fn(g.obs, ay, lambda x: pushforward(sigma(x), lambda y: (UNIT, y), ay))
    bwd = Kernel.deterministic(product_space(Unit, g.payoffs), Unit, lambda _: UNIT)
    return make_lens(g.source, g.target, Unit, fwd, bwd)


def _agent_delta_lens(g: AgentDelta, sigma: Kernel) -> Lens:
    xy = g.target.covariant
    ay = product_space(Unit, xy)
    fwd = Kernel.from_fn(g.obs, ay, lambda x: pushforward(sigma(x), lambda y: (UNIT, (x, y)), ay))
    bwd = Kernel.deterministic(product_space(Unit, g.payoffs), Unit, lambda _: UNIT)
    return make_lens(g.source, g.target, Unit, fwd, bwd)


def play(g: OpenGame, sigma: Any, _path: str = "") -> Lens:
    if isinstance(g, Computation):
        if sigma is not None:
            raise _shape_error(_path, "computation expects None")
        return pair_lens(g.f, g.g)
    if isinstance(g, Counit):
        if sigma is not None:
            raise _shape_error(_path, "counit expects None")
        return counit_lens(g.f)
    if isinstance(g, Structural):
        if sigma is not None:
            raise _shape_error(_path, "structural game expects None")
        return g.lens
    if isinstance(g, Agent):
        _check_agent_kernel(g, sigma, _path)
        return _agent_lens(g, sigma)
    if isinstance(g, AgentDelta):
        _check_agent_kernel(g, sigma, _path)
        return _agent_delta_lens(g, sigma)
    if isinstance(g, Atom):
        if not isinstance(sigma, Lens):
            raise _shape_error(_path, "atom expects a Lens")
        return sigma
    if isinstance(g, (Seq, Tensor)):
        if not (isinstance(sigma, tuple) and len(sigma) == 2):
            raise _shape_error(_path, f"{type(g).__name__} expects a pair")
        if isinstance(g, Seq):
            return lens_compose(play(g.second, sigma[1], _path + ".1"), play(g.first, sigma[0], _path + ".0"))
        return lens_tensor(play(g.left, sigma[0], _path + ".0"), play(g.right, sigma[1], _path + ".1"))
    raise TypeError(f"not an open game: {g!r}")


def _check_context(g: OpenGame, c: Context) -> None:
    want = (g.source.covariant, g.target.covariant, g.target.contravariant)
    have = (c.observations, c.actions, c.payoffs)
    if want != have:
        raise WiringError(f"context {c!r} does not fit game interfaces {g.source!r} -> {g.target!r}")


def expected_payoffs(c: Context, x: Value) -> dict:
    """Posterior expected payoff of each action after observing ``x``."""
    post = posterior_continuation(c, x)
    return {y: expectation(post(y)) for y in c.actions}


def agent_best_actions(c: Context, x: Value) -> FrozenSet[Value]:
    eu = expected_payoffs(c, x)
    best = max(eu.values())
    return frozenset(y for y, v in eu.items() if v == best)


def agent_delta_context(c: Context) -> Context:
    """The context an ``AgentDelta`` hands to its inner agent.

    The observation is copied into the hidden state so the continuation can
    still read it.
    """
    xs = c.observations
    theta = product_space(c.theta, xs)
    hspace = product_space(theta, xs)
    hist = pushforward(c.history, lambda tx: (tx, tx[1]), hspace)
    k = c.continuation
    cont = Kernel.from_fn(product_space(theta, c.actions.factor(RIGHT)), c.payoffs,
                          lambda ty: k((ty[0][0], (ty[0][1], ty[1]))))
    return Context(theta, hist, cont)


def _agent_prefers(c: Context, deviation: Kernel) -> bool:
    for x in marginal(c.history, RIGHT):
        best = agent_best_actions(c, x)
        if not set(deviation(x).support) <= best:
            return False
    return True


def br_contains(g: OpenGame, c: Context, sigma: Any, deviation: Any) -> bool:
    """Is ``deviation`` among the best responses to ``sigma`` in context ``c``?"""
    _check_context(g, c)
    check_profile(g, sigma)
    check_profile(g, deviation)
    return _br(g, c, sigma, deviation)


def _br(g, c, sigma, dev) -> bool:
    if isinstance(g, (Computation, Counit, Structural)):
        return True
    if isinstance(g, Agent):
        return _agent_prefers(c, dev)
    if isinstance(g, AgentDelta):
        return _agent_prefers(agent_delta_context(c), dev)
    if isinstance(g, Atom):
        accepted = g.preference(canonicalize_context(c))
        return any(behavioral_eq(dev, l) for l in accepted)
    if isinstance(g, Seq):
        return (_br(g.first, seq_local_first(c, play(g.second, sigma[1])), sigma[0], dev[0])
                and _br(g.second, seq_local_second(c, play(g.first, sigma[0])), sigma[1], dev[1]))
    if isinstance(g, Tensor):
        return (_br(g.left, tensor_local_left(c, play(g.right, sigma[1])), sigma[0], dev[0])
                and _br(g.right, tensor_local_right(c, play(g.left, sigma[0])), sigma[1], dev[1]))
    raise TypeError(f"not an open game: {g!r}")


def is_equilibrium(g: OpenGame, c: Context, sigma: Any) -> bool:
    return br_contains(g, c, sigma, sigma)


def pure_kernels(obs: FiniteSet, act: FiniteSet) -> Iterator[Kernel]:
    """Every deterministic kernel ``obs -> act``, in lexicographic order."""
    for choice in itertools.product(act.elements, repeat=len(obs)):
        table = dict(zip(obs.elements, choice))
        yield Kernel.deterministic(obs, act, table.__getitem__)


def count_pure_profiles(g: OpenGame) -> int:
    if isinstance(g, (Agent, AgentDelta)):
        return len(g.act) ** len(g.obs)
    if isinstance(g, Atom):
        return len(g.lenses)
    if isinstance(g, Seq):
        return count_pure_profiles(g.first) * count_pure_profiles(g.second)
    if isinstance(g, Tensor):
        return count_pure_profiles(g.left) * count_pure_profiles(g.right)
    return 1


def pure_profiles(g: OpenGame) -> Iterator[Any]:
    if isinstance(g, (Agent, AgentDelta)):
        yield from pure_kernels(g.obs, g.act)
    elif isinstance(g, Atom):
        yield from g.lenses
    elif isinstance(g, (Seq, Tensor)):
        a, b = (g.first, g.second) if isinstance(g, Seq) else (g.left, g.right)
        rights = list(pure_profiles(b))
        for s in pure_profiles(a):
            for t in rights:
                yield (s, t)
    else:
        yield None


def enumerate_pure_equilibria(g: OpenGame, c: Context, budget: Optional[int] = None) -> List[Any]:
    """All pure profiles that are equilibria of ``g`` in ``c``, in enumeration order."""
    budget = enumeration_budget() if budget is None else budget
    n = count_pure_profiles(g)
    if n > budget:
        raise BudgetExceeded(n, budget)
    _check_context(g, c)
    return [s for s in pure_profiles(g) if _br(g, c, s, s)]


@dataclass(frozen=True)
class BisimRelation:
    """Relation between two explicit profile lists, as index pairs."""

    pairs: FrozenSet[Tuple[int, int]]

    def converse(self) -> "BisimRelation":
        return BisimRelation(frozenset((j, i) for i, j in self.pairs))

    def related(self, i: int) -> List[int]:
        return sorted(j for a, j in self.pairs if a == i)

    def is_serial(self, n: int) -> bool:
        return all(self.related(i) for i in range(n))


def check_simulation(g1: OpenGame, g2: OpenGame, profiles1: Sequence[Any], profiles2: Sequence[Any],
                     rel: BisimRelation, contexts: Sequence[Context],
                     deviations: Optional[Sequence[int]] = None) -> bool:
    """Refute or confirm that ``rel`` simulates ``g1`` by ``g2``.

    Only the supplied contexts are examined, and deviations range over the
    indices ``deviations`` into ``profiles1`` (all of them by default).
    """
    if g1.source != g2.source or g1.target != g2.target:
        raise WiringError("games have different interfaces")
    if not rel.is_serial(len(profiles1)):
        return False
    for i, j in rel.pairs:
        if not behavioral_eq(play(g1, profiles1[i]), play(g2, profiles2[j])):
            return False
    devs = range(len(profiles1)) if deviations is None else deviations
    for c in contexts:
        for i, j in rel.pairs:
            for d in devs:
                if not br_contains(g1, c, profiles1[i], profiles1[d]):
                    continue
                if not any(br_contains(g2, c, profiles2[j], profiles2[e]) for e in rel.related(d)):
                    return False
    return True


def check_bisimulation(g1: OpenGame, g2: OpenGame, profiles1: Sequence[Any], profiles2: Sequence[Any],
                       rel: BisimRelation, contexts: Sequence[Context]) -> bool:
    return (check_simulation(g1, g2, profiles1, profiles2, rel, contexts)
            and check_simulation(g2, g1, profiles2, profiles1, rel.converse(), contexts))
