"""Coend lenses over stochastic maps.

A lens ``(X,S) -> (Y,R)`` is represented by a residual space ``A``, a forward
kernel ``X -> A x Y`` and a backward kernel ``A x R -> S``.  Representatives
are compared through :func:`canonicalize`, which conditions the residual on the
observed forward output.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from .errors import WiringError
from .prob import (
    LEFT,
    RIGHT,
    UNIT,
    Dist,
    FiniteSet,
    Kernel,
    Unit,
    Value,
    bind,
    bayes_update,
    dirac,
    kernel_compose,
    kernel_tensor,
    identity_kernel,
    marginal,
    product,
    product_space,
    pushforward,
    value_key,
    value_to_json,
    dist_to_json,
)


@dataclass(frozen=True)
class LensInterface:
    covariant: FiniteSet
    contravariant: FiniteSet

    def tensor(self, other: "LensInterface") -> "LensInterface":
        return LensInterface(
            product_space(self.covariant, other.covariant),
            product_space(self.contravariant, other.contravariant),
        )

    def __repr__(self) -> str:
        return f"({self.covariant!r}, {self.contravariant!r})"


I = LensInterface(Unit, Unit)


@dataclass(frozen=True, eq=False)
class Lens:
    source: LensInterface
    target: LensInterface
    residual: FiniteSet
    forward: Kernel
    backward: Kernel

    def __repr__(self) -> str:
        return f"Lens({self.source!r} -> {self.target!r}, residual={self.residual!r})"


def make_lens(source: LensInterface, target: LensInterface, residual: FiniteSet,
              forward: Kernel, backward: Kernel) -> Lens:
    if forward.domain != source.covariant:
        raise WiringError(f"forward domain {forward.domain!r} != source covariant {source.covariant!r}")
    if forward.codomain != product_space(residual, target.covariant):
        raise WiringError(f"forward codomain {forward.codomain!r} != residual x target covariant")
    if backward.domain != product_space(residual, target.contravariant):
        raise WiringError(f"backward domain {backward.domain!r} != residual x target contravariant")
    if backward.codomain != source.contravariant:
        raise WiringError(f"backward codomain {backward.codomain!r} != source contravariant {source.contravariant!r}")
    return Lens(source, target, residual, forward, backward)


def identity_lens(interface: LensInterface) -> Lens:
    x, s = interface.covariant, interface.contravariant
    fwd = Kernel.deterministic(x, product_space(Unit, x), lambda v: (UNIT, v))
    bwd = Kernel.deterministic(product_space(Unit, s), s, lambda ar: ar[1])
    return make_lens(interface, interface, Unit, fwd, bwd)


def pair_lens(f: Kernel, g: Kernel) -> Lens:
    """The lens ``<f, g> : (X,S) -> (Y,R)`` with unit residual."""
    y = f.codomain
    ay = product_space(Unit, y)
    fwd = Kernel.from_fn(f.domain, ay, lambda x: pushforward(f(x), lambda v: (UNIT, v), ay))
    bwd = Kernel.from_fn(product_space(Unit, g.domain), g.codomain, lambda ar: g(ar[1]))
    return make_lens(LensInterface(f.domain, g.codomain), LensInterface(y, g.domain), Unit, fwd, bwd)


def counit_lens(f: Kernel) -> Lens:
    """``(X,S) -> (I,I)`` keeping ``x`` on the residual and answering with ``f(x)``."""
    x = f.domain
    fwd = Kernel.deterministic(x, product_space(x, Unit), lambda v: (v, UNIT))
    bwd = Kernel.from_fn(product_space(x, Unit), f.codomain, lambda au: f(au[0]))
    return make_lens(LensInterface(x, f.codomain), I, x, fwd, bwd)


def lens_compose(t: Lens, l: Lens) -> Lens:
    """``t . l``: run ``l`` first, then ``t``; residuals pair up as ``A x A'``."""
    if l.target != t.source:
        raise WiringError(f"cannot compose: {l.target!r} vs {t.source!r}")
    res = product_space(l.residual, t.residual)
    fwd_space = product_space(res, t.target.covariant)

    def fwd(x):
        return bind(
            l.forward(x),
            lambda ay: pushforward(t.forward(ay[1]), lambda bz: ((ay[0], bz[0]), bz[1]), fwd_space),
            fwd_space,
        )

    s = l.source.contravariant

    def bwd(aq):
        (a, b), q = aq
        return bind(t.backward((b, q)), lambda r: l.backward((a, r)), s)

    return make_lens(
        l.source, t.target, res,
        Kernel.from_fn(l.source.covariant, fwd_space, fwd),
        Kernel.from_fn(product_space(res, t.target.contravariant), s, bwd),
    )


def lens_tensor(l1: Lens, l2: Lens) -> Lens:
    source = l1.source.tensor(l2.source)
    target = l1.target.tensor(l2.target)
    res = product_space(l1.residual, l2.residual)
    fwd_space = product_space(res, target.covariant)

    def fwd(xx):
        joint = product(l1.forward(xx[0]), l2.forward(xx[1]))
        return pushforward(joint, lambda p: ((p[0][0], p[1][0]), (p[0][1], p[1][1])), fwd_space)

    def bwd(arr):
        (a, b), (r1, r2) = arr
        return product(l1.backward((a, r1)), l2.backward((b, r2)))

    return make_lens(
        source, target, res,
        Kernel.from_fn(source.covariant, fwd_space, fwd),
        Kernel.from_fn(product_space(res, target.contravariant), source.contravariant, bwd),
    )


def iso_lens(source: LensInterface, target: LensInterface,
             forward: Callable[[Value], Value], backward: Callable[[Value], Value]) -> Lens:
    """A unit-residual Dirac lens from a bijection and the inverse on the back wire."""
    fwd = Kernel.deterministic(source.covariant, product_space(Unit, target.covariant), lambda x: (UNIT, forward(x)))
    bwd = Kernel.deterministic(product_space(Unit, target.contravariant), source.contravariant, lambda ar: backward(ar[1]))
    return make_lens(source, target, Unit, fwd, bwd)


def _assoc(v):
    (a, b), c = v
    return (a, (b, c))


def _assoc_inv(v):
    a, (b, c) = v
    return ((a, b), c)


def _swap(v):
    return (v[1], v[0])


STRUCTURAL_KINDS = ("assoc", "assoc_inv", "swap", "unit_l", "unit_l_inv", "unit_r", "unit_r_inv")


def structural_lens(kind: str, *interfaces: LensInterface) -> Lens:
    """Structural isomorphisms of the monoidal structure.

    ``assoc`` takes three interfaces and maps ``(P x Q) x R`` to ``P x (Q x R)``;
    ``swap`` takes two; the unitors take one.
    """
    arity = {"assoc": 3, "assoc_inv": 3, "swap": 2}.get(kind, 1)
    if kind not in STRUCTURAL_KINDS:
        raise WiringError(f"unknown structural kind {kind!r}")
    if len(interfaces) != arity:
        raise WiringError(f"{kind} takes {arity} interface(s), got {len(interfaces)}")
    if kind in ("assoc", "assoc_inv"):
        p, q, r = interfaces
        left, right = p.tensor(q).tensor(r), p.tensor(q.tensor(r))
        if kind == "assoc":
            return iso_lens(left, right, _assoc, _assoc_inv)
        return iso_lens(right, left, _assoc_inv, _assoc)
    if kind == "swap":
        p, q = interfaces
        return iso_lens(p.tensor(q), q.tensor(p), _swap, _swap)
    (p,) = interfaces
    if kind == "unit_l":
        return iso_lens(I.tensor(p), p, lambda v: v[1], lambda s: (UNIT, s))
    if kind == "unit_l_inv":
        return iso_lens(p, I.tensor(p), lambda x: (UNIT, x), lambda v: v[1])
    if kind == "unit_r":
        return iso_lens(p.tensor(I), p, lambda v: v[0], lambda s: (s, UNIT))
    return iso_lens(p, p.tensor(I), lambda x: (x, UNIT), lambda v: v[0])


def slide(forward: Kernel, f: Kernel, backward: Kernel) -> Tuple[Lens, Lens]:
    """Both sides of one sliding step along ``f : A -> B``.

    Given ``v : X -> A x Y`` and ``u : B x R -> S`` returns
    ``(B, (f x id) . v, u)`` and ``(A, v, u . (f x id))``, which are
    identified by the coend.
    """
    a, b = f.domain, f.codomain
    x = forward.domain
    y = forward.codomain.factor(RIGHT)
    if forward.codomain.factor(LEFT) != a:
        raise WiringError(f"forward residual {forward.codomain.factor(LEFT)!r} != slide domain {a!r}")
    if backward.domain.factor(LEFT) != b:
        raise WiringError(f"backward residual {backward.domain.factor(LEFT)!r} != slide codomain {b!r}")
    r = backward.domain.factor(RIGHT)
    source = LensInterface(x, backward.codomain)
    target = LensInterface(y, r)
    pushed = make_lens(source, target, b, kernel_compose(kernel_tensor(f, identity_kernel(y)), forward), backward)
    pulled = make_lens(source, target, a, forward, kernel_compose(backward, kernel_tensor(f, identity_kernel(r))))
    return pushed, pulled


@dataclass(frozen=True)
class CanonicalLens:
    """Observable behaviour of a lens.

    ``fwd`` is the forward marginal on ``Y``; ``back`` maps supported triples
    ``(x, y, r)`` to the backward output with the residual conditioned on
    ``(x, y)``.
    """

    source: LensInterface
    target: LensInterface
    fwd: Kernel
    back: Dict[Tuple[Value, Value, Value], Dist]

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.fwd))


def canonicalize(l: Lens) -> CanonicalLens:
    ys = l.target.covariant
    s = l.source.contravariant
    rows = {}
    back = {}
    for x in l.source.covariant:
        joint = l.forward(x)
        rows[x] = marginal(joint, RIGHT)
        for y in rows[x]:
            posterior = bayes_update(joint, y)
            for r in l.target.contravariant:
                back[(x, y, r)] = bind(posterior, lambda a: l.backward((a, r)), s)
    return CanonicalLens(l.source, l.target, Kernel(l.source.covariant, ys, rows), back)


def behavioral_eq(l1: Lens, l2: Lens) -> bool:
    if l1.source != l2.source or l1.target != l2.target:
        raise WiringError(f"interfaces differ: {l1!r} vs {l2!r}")
    return canonicalize(l1) == canonicalize(l2)


def reconstitute(c: CanonicalLens) -> Lens:
    """A representative with residual ``X x Y`` realising a canonical form."""
    x, y = c.source.covariant, c.target.covariant
    s = c.source.contravariant
    res = product_space(x, y)
    fwd_space = product_space(res, y)
    fwd = Kernel.from_fn(x, fwd_space, lambda xv: pushforward(c.fwd(xv), lambda yv: ((xv, yv), yv), fwd_space))
    fallback = dirac(s.elements[0], s) if len(s) else None

    def bwd(xy_r):
        (xv, yv), r = xy_r
        return c.back.get((xv, yv, r), fallback)

    return make_lens(c.source, c.target, res, fwd, Kernel.from_fn(product_space(res, c.target.contravariant), s, bwd))


def kernel_to_json(k: Kernel) -> dict:
    return {value_key(x): dist_to_json(k(x)) for x in k.domain}


def lens_to_json(l: Lens) -> dict:
    return {
        "source": [[value_to_json(v) for v in l.source.covariant], [value_to_json(v) for v in l.source.contravariant]],
        "target": [[value_to_json(v) for v in l.target.covariant], [value_to_json(v) for v in l.target.contravariant]],
        "residual": [value_to_json(v) for v in l.residual],
        "forward": kernel_to_json(l.forward),
        "backward": kernel_to_json(l.backward),
    }
