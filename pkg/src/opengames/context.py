"""Contexts for open games over stochastic maps, and the local-context operators.

Since the monoidal unit is terminal, a context for a game ``(X,S) -> (Y,R)``
is a hidden space ``theta``, a history distribution on ``theta x X`` and a
continuation kernel ``theta x Y -> R``.  The ``S`` wire is never observed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .errors import WiringError
from .lens import Lens
from .prob import (
    LEFT,
    RIGHT,
    UNIT,
    Dist,
    FiniteSet,
    Kernel,
    Unit,
    Value,
    bayes_update,
    bind,
    dirac,
    dist_from_json,
    dist_to_json,
    marginal,
    product_space,
    pushforward,
    value_from_json,
    value_key,
    value_to_json,
)


@dataclass(frozen=True, eq=False)
class Context:
    theta: FiniteSet
    history: Dist
    continuation: Kernel

    @property
    def observations(self) -> FiniteSet:
        return self.history.space.factor(RIGHT)

    @property
    def actions(self) -> FiniteSet:
        return self.continuation.domain.factor(RIGHT)

    @property
    def payoffs(self) -> FiniteSet:
        return self.continuation.codomain

    def __repr__(self) -> str:
        return f"Context(theta={self.theta!r}, X={self.observations!r}, Y={self.actions!r}, R={self.payoffs!r})"


def make_context(theta: FiniteSet, history: Dist, continuation: Kernel) -> Context:
    if not history.space.is_product or history.space.factor(LEFT) != theta:
        raise WiringError(f"history must live on theta x X, got {history.space!r}")
    if not continuation.domain.is_product or continuation.domain.factor(LEFT) != theta:
        raise WiringError(f"continuation must start from theta x Y, got {continuation.domain!r}")
    return Context(theta, history, continuation)


def closed_context() -> Context:
    """The unique context of a game ``I -> I``."""
    uu = product_space(Unit, Unit)
    return make_context(Unit, dirac((UNIT, UNIT), uu), Kernel.deterministic(uu, Unit, lambda _: UNIT))


def point_context(x: Value, observations: FiniteSet, continuation: Kernel) -> Context:
    """A context with no hidden state: observe ``x``, then ``continuation : Y -> R``."""
    hist = dirac((UNIT, x), product_space(Unit, observations))
    dom = product_space(Unit, continuation.domain)
    return make_context(Unit, hist, Kernel.from_fn(dom, continuation.codomain, lambda ty: continuation(ty[1])))


@dataclass(frozen=True)
class CanonicalContext:
    x_marginal: Dist
    posterior_continuation: Dict[Value, Kernel]

    def __hash__(self) -> int:
        return hash(self.x_marginal)


def posterior_continuation(c: Context, x: Value) -> Kernel:
    post = bayes_update(c.history, x)
    k = c.continuation
    return Kernel.from_fn(c.actions, c.payoffs, lambda y: bind(post, lambda t: k((t, y)), k.codomain))


def canonicalize_context(c: Context) -> CanonicalContext:
    xm = marginal(c.history, RIGHT)
    return CanonicalContext(xm, {x: posterior_continuation(c, x) for x in xm})


def context_eq(c1: Context, c2: Context) -> bool:
    if (c1.observations, c1.actions, c1.payoffs) != (c2.observations, c2.actions, c2.payoffs):
        raise WiringError(f"context interfaces differ: {c1!r} vs {c2!r}")
    return canonicalize_context(c1) == canonicalize_context(c2)


def seq_local_first(c: Context, tau: Lens) -> Context:
    """Local context for ``G`` in ``H . G`` when ``H`` plays the lens ``tau``."""
    if tau.target.covariant != c.actions or tau.target.contravariant != c.payoffs:
        raise WiringError(f"lens target {tau.target!r} does not match context ({c.actions!r}, {c.payoffs!r})")
    k = c.continuation
    r = tau.source.contravariant

    def cont(ty):
        theta, y = ty
        return bind(tau.forward(y), lambda bz: bind(k((theta, bz[1])), lambda q: tau.backward((bz[0], q)), r), r)

    dom = product_space(c.theta, tau.source.covariant)
    return Context(c.theta, c.history, Kernel.from_fn(dom, r, cont))


def seq_local_second(c: Context, sigma: Lens) -> Context:
    """Local context for ``H`` in ``H . G`` when ``G`` plays the lens ``sigma``."""
    if sigma.source.covariant != c.observations:
        raise WiringError(f"lens source {sigma.source!r} does not match observations {c.observations!r}")
    space = product_space(c.theta, sigma.target.covariant)

    def step(tx):
        theta, x = tx
        return pushforward(sigma.forward(x), lambda ay: (theta, ay[1]), space)

    return Context(c.theta, bind(c.history, step, space), c.continuation)


def tensor_local_left(c: Context, mu: Lens) -> Context:
    """Local context for ``G`` in ``G x K`` when ``K`` plays the lens ``mu``.

    The hidden space grows to ``theta x Y'``: ``G`` does not see ``K``'s move
    but its payoff depends on it.
    """
    obs, acts, pays = c.observations, c.actions, c.payoffs
    if obs.factor(RIGHT) != mu.source.covariant or acts.factor(RIGHT) != mu.target.covariant:
        raise WiringError(f"lens {mu!r} does not fit the right half of {c!r}")
    x, y, r = obs.factor(LEFT), acts.factor(LEFT), pays.factor(LEFT)
    theta = product_space(c.theta, mu.target.covariant)
    hspace = product_space(theta, x)

    def step(t_xx):
        t, (xv, xr) = t_xx
        return pushforward(mu.forward(xr), lambda ay: ((t, ay[1]), xv), hspace)

    k = c.continuation

    def cont(ty):
        (t, yr), yv = ty
        return pushforward(k((t, (yv, yr))), lambda rr: rr[0], r)

    return Context(theta, bind(c.history, step, hspace), Kernel.from_fn(product_space(theta, y), r, cont))


def tensor_local_right(c: Context, sigma: Lens) -> Context:
    """Mirror of :func:`tensor_local_left`: local context for ``K`` in ``G x K``."""
    obs, acts, pays = c.observations, c.actions, c.payoffs
    if obs.factor(LEFT) != sigma.source.covariant or acts.factor(LEFT) != sigma.target.covariant:
        raise WiringError(f"lens {sigma!r} does not fit the left half of {c!r}")
    x, y, r = obs.factor(RIGHT), acts.factor(RIGHT), pays.factor(RIGHT)
    theta = product_space(c.theta, sigma.target.covariant)
    hspace = product_space(theta, x)

    def step(t_xx):
        t, (xl, xv) = t_xx
        return pushforward(sigma.forward(xl), lambda ay: ((t, ay[1]), xv), hspace)

    k = c.continuation

    def cont(ty):
        (t, yl), yv = ty
        return pushforward(k((t, (yl, yv))), lambda rr: rr[1], r)

    return Context(theta, bind(c.history, step, hspace), Kernel.from_fn(product_space(theta, y), r, cont))


def context_to_json(c: Context) -> dict:
    return {
        "theta": [value_to_json(t) for t in c.theta],
        "observations": [value_to_json(x) for x in c.observations],
        "actions": [value_to_json(y) for y in c.actions],
        "payoffs": [value_to_json(r) for r in c.payoffs],
        "history": dist_to_json(c.history),
        "continuation": {value_key(ty): dist_to_json(c.continuation(ty)) for ty in c.continuation.domain},
    }


def context_from_json(obj: dict, theta: FiniteSet, observations: FiniteSet,
                      actions: FiniteSet, payoffs: FiniteSet) -> Context:
    """Rebuild a context serialised by :func:`context_to_json` over known spaces."""
    hist = dist_from_json(obj["history"], product_space(theta, observations))
    dom = product_space(theta, actions)
    rows = {}
    for key, d in obj["continuation"].items():
        rows[value_from_json(key, dom)] = dist_from_json(d, payoffs)
    return make_context(theta, hist, Kernel(dom, payoffs, rows))

