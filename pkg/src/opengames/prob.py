"""Exact finite-support distributions and stochastic kernels between finite sets.

Values are plain Python objects: atoms are ``str``, numbers are
:class:`fractions.Fraction`, and tuples of values are ``tuple``.  Spaces are
:class:`FiniteSet` instances; binary products are declared explicitly with
:func:`product_space` and are never flattened.
"""
from __future__ import annotations

import functools
import itertools
import json
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import ConditioningError, ConstructionError, DomainError, WiringError

Value = Union[str, Fraction, tuple]

UNIT = "()"

LEFT, RIGHT = "left", "right"


def num(x: Any) -> Fraction:
    """Coerce an int, Fraction or ``"n/d"`` string to an exact rational."""
    if isinstance(x, bool):
        raise DomainError(f"booleans are not numbers: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {x!r}") from exc
    raise DomainError(f"not an exact rational: {x!r} (floats are not accepted)")


def _norm_value(v: Any) -> Value:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return tuple(_norm_value(c) for c in v)
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Fraction(v)
    raise DomainError(f"unsupported value {v!r}")


def show_value(v: Value) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (Fraction, int)):
        return rational_to_str(Fraction(v))
    return "(" + ",".join(show_value(c) for c in v) + ")"


class FiniteSet:
    """An ordered, duplicate-free finite space of values.

    ``factors`` is ``(left, right)`` when the set was declared as a binary
    product; two sets are equal only if both their elements and their declared
    structure agree.
    """

    __slots__ = ("elements", "factors", "_index", "_hash")

    def __init__(self, elements: Iterable[Any], factors: Optional[Tuple["FiniteSet", "FiniteSet"]] = None):
        elems = tuple(_norm_value(e) for e in elements)
        index = {}
        for i, e in enumerate(elems):
            if e in index:
                raise DomainError(f"duplicate element {show_value(e)}")
            index[e] = i
        self.elements = elems
        self.factors = factors
        self._index = index
        self._hash = hash((elems, factors))

    @classmethod
    def _from_trusted(cls, elems: tuple, factors) -> "FiniteSet":
        s = cls.__new__(cls)
        s.elements = elems
        s.factors = factors
        s._index = {e: i for i, e in enumerate(elems)}
        s._hash = hash((elems, factors))
        return s

    def __contains__(self, x: object) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __iter__(self) -> Iterator[Value]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self._hash == other._hash and self.elements == other.elements and self.factors == other.factors

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.factors is not None:
            return f"({self.factors[0]!r} x {self.factors[1]!r})"
        return "{" + ", ".join(show_value(e) for e in self.elements) + "}"

    def index(self, x: Value) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise DomainError(f"{show_value(x) if _is_value(x) else x!r} is not in {self!r}") from None

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    def factor(self, side: str) -> "FiniteSet":
        if self.factors is None:
            raise WiringError(f"{self!r} is not a declared product space")
        return self.factors[0] if side == LEFT else self.factors[1]


def _is_value(x: object) -> bool:
    return isinstance(x, (str, Fraction, tuple, int))


def finite_set(*elements: Any) -> FiniteSet:
    return FiniteSet(elements)


@functools.lru_cache(maxsize=4096)
def product_space(a: FiniteSet, b: FiniteSet) -> FiniteSet:
    return FiniteSet._from_trusted(tuple(itertools.product(a.elements, b.elements)), (a, b))


def numbers(*xs: Any) -> FiniteSet:
    """A space of rationals, sorted ascending."""
    return FiniteSet(sorted({num(x) for x in xs}))


Unit = FiniteSet([UNIT])
Empty = FiniteSet([])


def _require(x: Value, space: FiniteSet, what: str = "value") -> None:
    if x not in space:
        shown = show_value(x) if _is_value(x) else repr(x)
        raise DomainError(f"{what} {shown} is not in {space!r}")


class Dist:
    """A probability distribution with finite support and exact weights.

    Zero weights are never stored, so the keys are exactly the support.
    """

    __slots__ = ("space", "_w", "_hash")

    def __init__(self, space: FiniteSet, weights: Mapping[Value, Fraction]):
        w = {}
        total = Fraction(0)
        for x, p in weights.items():
            if not isinstance(p, Fraction):
                p = num(p)
            if p < 0:
                raise ConstructionError(f"negative weight {p} on {show_value(x)}")
            if p == 0:
                continue
            if type(x) is int:
                x = Fraction(x)
            _require(x, space)
            w[x] = p
            total += p
        if total != 1:
            raise ConstructionError(f"weights sum to {total}, not 1")
        self.space = space
        # store in space order so iteration is deterministic
        self._w = {x: w[x] for x in sorted(w, key=space.index)} if len(w) > 1 else w
        self._hash = None

    def __getitem__(self, x: Value) -> Fraction:
        return self._w.get(x, Fraction(0))

    def items(self):
        return self._w.items()

    @property
    def support(self) -> tuple:
        return tuple(self._w)

    def __iter__(self):
        return iter(self._w)

    def __len__(self) -> int:
        return len(self._w)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        return self.space == other.space and self._w == other._w

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._w.items())))
        return self._hash

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{show_value(x)}: {p}" for x, p in self._w.items()) + "}"

    @property
    def is_dirac(self) -> bool:
        return len(self._w) == 1


def dirac(x: Value, space: FiniteSet) -> Dist:
    _require(x, space)
    return Dist(space, {x: Fraction(1)})


def from_weights(space: FiniteSet, raw: Mapping[Value, Any]) -> Dist:
    """Normalise non-negative raw weights into a distribution."""
    ws = {x: num(p) for x, p in raw.items()}
    if any(p < 0 for p in ws.values()):
        raise ConstructionError("negative weight")
    total = sum(ws.values(), Fraction(0))
    if total == 0:
        raise ConstructionError("all weights are zero")
    return Dist(space, {x: p / total for x, p in ws.items()})


def uniform(space: FiniteSet) -> Dist:
    if not len(space):
        raise ConstructionError("uniform distribution on the empty space")
    p = Fraction(1, len(space))
    return Dist(space, {x: p for x in space})


def pushforward(d: Dist, f: Callable[[Value], Value], target: FiniteSet) -> Dist:
    out: dict = {}
    for x, p in d.items():
        y = f(x)
        _require(y, target, "image")
        out[y] = out.get(y, 0) + p
    return Dist(target, out)


def bind(d: Dist, k: Union["Kernel", Callable[[Value], Dist]], target: Optional[FiniteSet] = None) -> Dist:
    """Law of total probability: ``out(y) = sum_x d(x) * k(x)(y)``.

    ``k`` is either a :class:`Kernel` on ``d.space`` or a plain callable
    returning distributions on ``target``.
    """
    if isinstance(k, Kernel):
        if k.domain != d.space:
            raise WiringError(f"kernel domain {k.domain!r} does not match distribution space {d.space!r}")
        target = k.codomain
    elif target is None:
        raise WiringError("bind with a callable needs an explicit target space")
    out: dict = {}
    for x, p in d.items():
        e = k(x)
        if e.space != target:
            raise WiringError(f"continuation produced a distribution on {e.space!r}, expected {target!r}")
        for y, q in e.items():
            out[y] = out.get(y, 0) + p * q
    return Dist(target, out)


def product(d1: Dist, d2: Dist) -> Dist:
    space = product_space(d1.space, d2.space)
    return Dist(space, {(x, y): p * q for x, p in d1.items() for y, q in d2.items()})


def marginal(d: Dist, side: str) -> Dist:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    target = d.space.factor(side)
    i = 0 if side == LEFT else 1
    return pushforward(d, lambda xy: xy[i], target)


def expectation(d: Dist) -> Fraction:
    total = Fraction(0)
    for v, p in d.items():
        if not isinstance(v, Fraction):
            raise WiringError(f"expectation of non-numeric value {show_value(v)}")
        total += p * v
    return total


def bayes_update(p: Dist, x: Value) -> Dist:
    """Condition a joint over ``theta x X`` on observing ``x``; returns a Dist on theta."""
    theta = p.space.factor(LEFT)
    _require(x, p.space.factor(RIGHT), "observation")
    joint = {t: q for (t, obs), q in p.items() if obs == x}
    mass = sum(joint.values(), Fraction(0))
    if mass == 0:
        raise ConditioningError(f"observation {show_value(x)} has probability zero")
    return Dist(theta, {t: q / mass for t, q in joint.items()})


class Kernel:
    """A stochastic map between finite sets.

    Rows are either given as a table or computed on first use from a
    function; either way each row is checked to live on ``codomain``.
    """

    __slots__ = ("domain", "codomain", "_rows", "_fn", "_hash")

    def __init__(self, domain: FiniteSet, codomain: FiniteSet, table: Mapping[Value, Dist]):
        for x in domain:
            if x not in table:
                raise WiringError(f"kernel table has no row for {show_value(x)}")
            if table[x].space != codomain:
                raise WiringError(f"row {show_value(x)} lives on {table[x].space!r}, expected {codomain!r}")
        if len(table) != len(domain):
            extra = [x for x in table if x not in domain]
            raise WiringError(f"kernel table has rows outside the domain: {extra[:3]!r}")
        self.domain = domain
        self.codomain = codomain
        self._rows = dict(table)
        self._fn = None
        self._hash = None

    @classmethod
    def from_fn(cls, domain: FiniteSet, codomain: FiniteSet, fn: Callable[[Value], Dist]) -> "Kernel":
        """A kernel whose rows are computed from ``fn`` on demand."""
        k = cls.__new__(cls)
        k.domain = domain
        k.codomain = codomain
        k._rows = {}
        k._fn = fn
        k._hash = None
        return k

    @classmethod
    def deterministic(cls, domain: FiniteSet, codomain: FiniteSet, f: Callable[[Value], Value]) -> "Kernel":
        return cls.from_fn(domain, codomain, lambda x: dirac(f(x), codomain))

    def __call__(self, x: Value) -> Dist:
        try:
            return self._rows[x]
        except KeyError:
            pass
        except TypeError:
            raise DomainError(f"{x!r} is not in the kernel domain {self.domain!r}") from None
        if self._fn is None or x not in self.domain:
            shown = show_value(x) if _is_value(x) else repr(x)
            raise DomainError(f"{shown} is not in the kernel domain {self.domain!r}")
        d = self._fn(x)
        if not isinstance(d, Dist) or d.space != self.codomain:
            space = d.space if isinstance(d, Dist) else type(d).__name__
            raise WiringError(f"row {show_value(x)} lives on {space!r}, expected {self.codomain!r}")
        self._rows[x] = d
        return d

    @property
    def table(self) -> dict:
        if self._fn is not None and len(self._rows) < len(self.domain):
            for x in self.domain:
                self(x)
        return {x: self._rows[x] for x in self.domain}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        if self is other:
            return True
        return (self.domain == other.domain and self.codomain == other.codomain
                and all(self(x) == other(x) for x in self.domain))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.domain, self.codomain, tuple(self(x) for x in self.domain)))
        return self._hash

    def __repr__(self) -> str:
        rows = "; ".join(f"{show_value(x)} -> {self(x)!r}" for x in self.domain)
        return f"Kernel({rows})"

    @property
    def is_dirac(self) -> bool:
        return all(self(x).is_dirac for x in self.domain)

    def as_function(self) -> Callable[[Value], Value]:
        """The underlying function of a Dirac kernel."""
        if not self.is_dirac:
            raise DomainError("kernel is not deterministic")
        return lambda x: self(x).support[0]


def identity_kernel(space: FiniteSet) -> Kernel:
    return Kernel.deterministic(space, space, lambda x: x)


def kernel_compose(k2: Kernel, k1: Kernel) -> Kernel:
    """``k2 . k1``: first ``k1``, then ``k2``."""
    if k1.codomain != k2.domain:
        raise WiringError(f"cannot compose: {k1.codomain!r} vs {k2.domain!r}")
    return Kernel(k1.domain, k2.codomain, {x: bind(k1(x), k2) for x in k1.domain})


def kernel_tensor(k1: Kernel, k2: Kernel) -> Kernel:
    dom = product_space(k1.domain, k2.domain)
    return Kernel(dom, product_space(k1.codomain, k2.codomain), {(a, b): product(k1(a), k2(b)) for a, b in dom})


def copy_kernel(space: FiniteSet) -> Kernel:
    return Kernel.deterministic(space, product_space(space, space), lambda x: (x, x))


def delete_kernel(space: FiniteSet) -> Kernel:
    return Kernel.deterministic(space, Unit, lambda x: UNIT)


def rational_to_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def value_to_json(v: Value) -> Any:
    if isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return rational_to_str(v)
    return [value_to_json(c) for c in v]


def value_key(v: Value) -> str:
    """String form of a value, usable as a JSON object key."""
    j = value_to_json(v)
    return j if isinstance(j, str) else json.dumps(j, separators=(",", ":"))


def _key_index(space: FiniteSet) -> dict:
    index: dict = {}
    for e in space:
        index.setdefault(value_key(e), e)
    return index


def value_from_json(obj: Any, space: FiniteSet) -> Value:
    """Decode a JSON value relative to the space it must belong to."""
    key = obj if isinstance(obj, str) else json.dumps(obj, separators=(",", ":"))
    try:
        return _key_index(space)[key]
    except KeyError:
        raise DomainError(f"{key} is not an element of {space!r}") from None


def dist_to_json(d: Dist) -> dict:
    return {value_key(x): rational_to_str(p) for x, p in d.items()}


def dist_from_json(obj: Mapping[str, Any], space: FiniteSet) -> Dist:
    index = _key_index(space)
    ws = {}
    for k, p in obj.items():
        if k not in index:
            raise DomainError(f"{k} is not an element of {space!r}")
        ws[index[k]] = num(p)
    return Dist(space, ws)
