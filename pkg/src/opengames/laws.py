"""Randomised law suite: monad, lens category, monoidal structure, localisation.

Each law draws one random instance from a :class:`random.Random` and returns
whether the law held.  :func:`run_laws` seeds every law independently from
``(seed, law name)`` so results do not depend on which laws are selected.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import gen
from .context import (
    Context,
    context_eq,
    make_context,
    point_context,
    seq_local_first,
    seq_local_second,
    tensor_local_left,
    tensor_local_right,
)
from .lens import (
    I,
    Lens,
    LensInterface,
    behavioral_eq,
    canonicalize,
    identity_lens,
    lens_compose,
    lens_tensor,
    make_lens,
    reconstitute,
    slide,
    structural_lens,
)
from .prob import (
    LEFT,
    RIGHT,
    FiniteSet,
    Kernel,
    bayes_update,
    bind,
    dirac,
    expectation,
    marginal,
    numbers,
    product,
    product_space,
    pushforward,
)

Law = Callable[[random.Random], bool]


def _sp(rng, n=4, prefix=""):
    return gen.space(rng, n, prefix)


# -- monad -----------------------------------------------------------------

def monad_left_unit(rng):
    x, y = _sp(rng, 5, "x"), _sp(rng, 5, "y")
    k = gen.kernel(rng, x, y)
    v = rng.choice(x.elements)
    return bind(dirac(v, x), k) == k(v)


def monad_right_unit(rng):
    x = _sp(rng, 5, "x")
    d = gen.dist(rng, x, 6)
    return bind(d, lambda v: dirac(v, x), x) == d


def monad_associativity(rng):
    x, y, z = _sp(rng, 5, "x"), _sp(rng, 5, "y"), _sp(rng, 5, "z")
    d = gen.dist(rng, x, 6)
    k1, k2 = gen.kernel(rng, x, y), gen.kernel(rng, y, z)
    return bind(bind(d, k1), k2) == bind(d, lambda v: bind(k1(v), k2), z)


def commutativity(rng):
    x, y = _sp(rng, 5, "x"), _sp(rng, 5, "y")
    d1, d2 = gen.dist(rng, x, 6), gen.dist(rng, y, 6)
    xy = product_space(x, y)
    lr = bind(d1, lambda a: pushforward(d2, lambda b: (a, b), xy), xy)
    rl = bind(d2, lambda b: pushforward(d1, lambda a: (a, b), xy), xy)
    return lr == rl == product(d1, d2)


def update_naturality(rng):
    t1, t2, x = _sp(rng, 4, "t"), _sp(rng, 4, "u"), _sp(rng, 4, "x")
    p = gen.dist(rng, product_space(t1, x), 8)
    f = {t: rng.choice(t2.elements) for t in t1}
    obs = rng.choice(marginal(p, RIGHT).support)
    lhs = pushforward(bayes_update(p, obs), f.__getitem__, t2)
    q = pushforward(p, lambda tx: (f[tx[0]], tx[1]), product_space(t2, x))
    return lhs == bayes_update(q, obs)


def expectation_linearity(rng):
    x = _sp(rng, 4, "x")
    pays = numbers(*rng.sample(range(-3, 4), rng.randint(1, 4)))
    d, k = gen.dist(rng, x, 6), gen.kernel(rng, x, pays)
    return expectation(bind(d, k)) == sum((p * expectation(k(v)) for v, p in d.items()), Fraction(0))


def marginal_of_product(rng):
    x, y = _sp(rng, 5, "x"), _sp(rng, 5, "y")
    d1, d2 = gen.dist(rng, x, 6), gen.dist(rng, y, 6)
    joint = product(d1, d2)
    return marginal(joint, LEFT) == d1 and marginal(joint, RIGHT) == d2


# -- lens category -----------------------------------------------------------

def _chain(rng, n, size=3, residual=3, deterministic=False):
    faces = [gen.interface(rng, size) for _ in range(n + 1)]
    return [gen.lens(rng, faces[i], faces[i + 1], residual, deterministic) for i in range(n)]


def lens_associativity(rng):
    l, m, n = _chain(rng, 3, size=4, residual=3)
    return behavioral_eq(lens_compose(n, lens_compose(m, l)), lens_compose(lens_compose(n, m), l))


def lens_left_unit(rng):
    (l,) = _chain(rng, 1, size=4)
    return behavioral_eq(lens_compose(identity_lens(l.target), l), l)


def lens_right_unit(rng):
    (l,) = _chain(rng, 1, size=4)
    return behavioral_eq(lens_compose(l, identity_lens(l.source)), l)


def canonical_roundtrip(rng):
    (l,) = _chain(rng, 1, size=4)
    return behavioral_eq(l, reconstitute(canonicalize(l)))


def sliding(rng):
    x, y, r, s = _sp(rng, 4, "x"), _sp(rng, 4, "y"), _sp(rng, 4, "r"), _sp(rng, 4, "s")
    a, b = _sp(rng, 4, "a"), _sp(rng, 4, "b")
    v = gen.kernel(rng, x, product_space(a, y))
    u = gen.kernel(rng, product_space(b, r), s)
    f = gen.kernel(rng, a, b, dirac_bias=0.2)
    pushed, pulled = slide(v, f, u)
    return canonicalize(pushed) == canonicalize(pulled)


# -- monoidal structure ------------------------------------------------------

def _pair(rng, size=2, residual=2):
    return [gen.lens(rng, gen.interface(rng, size), gen.interface(rng, size), residual) for _ in range(2)]


def tensor_functoriality(rng):
    l1, t1 = _chain(rng, 2, size=3, residual=2)
    l2, t2 = _chain(rng, 2, size=3, residual=2)
    lhs = lens_compose(lens_tensor(t1, t2), lens_tensor(l1, l2))
    return behavioral_eq(lhs, lens_tensor(lens_compose(t1, l1), lens_compose(t2, l2)))


def tensor_identity(rng):
    p, q = gen.interface(rng, 3), gen.interface(rng, 3)
    return behavioral_eq(lens_tensor(identity_lens(p), identity_lens(q)), identity_lens(p.tensor(q)))


def swap_naturality(rng):
    l1, l2 = _pair(rng, 4, 2)
    lhs = lens_compose(structural_lens("swap", l1.target, l2.target), lens_tensor(l1, l2))
    rhs = lens_compose(lens_tensor(l2, l1), structural_lens("swap", l1.source, l2.source))
    return behavioral_eq(lhs, rhs)


def swap_involution(rng):
    p, q = gen.interface(rng, 3), gen.interface(rng, 3)
    twice = lens_compose(structural_lens("swap", q, p), structural_lens("swap", p, q))
    return behavioral_eq(twice, identity_lens(p.tensor(q)))


def associator_naturality(rng):
    l1, l2 = _pair(rng, 3, 2)
    l3 = gen.lens(rng, gen.interface(rng, 3), gen.interface(rng, 3), 2)
    lhs = lens_compose(structural_lens("assoc", l1.target, l2.target, l3.target),
                       lens_tensor(lens_tensor(l1, l2), l3))
    rhs = lens_compose(lens_tensor(l1, lens_tensor(l2, l3)),
                       structural_lens("assoc", l1.source, l2.source, l3.source))
    return behavioral_eq(lhs, rhs)


def associator_inverse(rng):
    p, q, r = (gen.interface(rng, 2) for _ in range(3))
    there_back = lens_compose(structural_lens("assoc_inv", p, q, r), structural_lens("assoc", p, q, r))
    return behavioral_eq(there_back, identity_lens(p.tensor(q).tensor(r)))


def left_unitor_naturality(rng):
    (l,) = _chain(rng, 1, size=4)
    lhs = lens_compose(structural_lens("unit_l", l.target), lens_tensor(identity_lens(I), l))
    rhs = lens_compose(l, structural_lens("unit_l", l.source))
    return behavioral_eq(lhs, rhs)


def right_unitor_naturality(rng):
    (l,) = _chain(rng, 1, size=4)
    lhs = lens_compose(structural_lens("unit_r", l.target), lens_tensor(l, identity_lens(I)))
    rhs = lens_compose(l, structural_lens("unit_r", l.source))
    return behavioral_eq(lhs, rhs)


def pentagon(rng):
    a, b, c, d = (gen.interface(rng, 2) for _ in range(4))
    ab = a.tensor(b)
    cd = c.tensor(d)
    # ((ab)c)d -> (ab)(cd) -> a(b(cd))
    top = lens_compose(structural_lens("assoc", a, b, cd), structural_lens("assoc", ab, c, d))
    # ((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd))
    bottom = lens_compose(
        lens_tensor(identity_lens(a), structural_lens("assoc", b, c, d)),
        lens_compose(structural_lens("assoc", a, b.tensor(c), d),
                     lens_tensor(structural_lens("assoc", a, b, c), identity_lens(d))),
    )
    return behavioral_eq(top, bottom)


def triangle(rng):
    a, b = gen.interface(rng, 3), gen.interface(rng, 3)
    lhs = lens_compose(lens_tensor(identity_lens(a), structural_lens("unit_l", b)),
                       structural_lens("assoc", a, I, b))
    rhs = lens_tensor(structural_lens("unit_r", a), identity_lens(b))
    return behavioral_eq(lhs, rhs)


def hexagon(rng):
    a, b, c = (gen.interface(rng, 2) for _ in range(3))
    # (ab)c -> a(bc) -> (bc)a -> b(ca)
    lhs = lens_compose(structural_lens("assoc", b, c, a),
                       lens_compose(structural_lens("swap", a, b.tensor(c)), structural_lens("assoc", a, b, c)))
    # (ab)c -> (ba)c -> b(ac) -> b(ca)
    rhs = lens_compose(lens_tensor(identity_lens(b), structural_lens("swap", a, c)),
                       lens_compose(structural_lens("assoc", b, a, c),
                                    lens_tensor(structural_lens("swap", a, b), identity_lens(c))))
    return behavioral_eq(lhs, rhs)


# -- localisation --------------------------------------------------------------

def _tensor_context(rng, src: LensInterface, tgt: LensInterface, max_theta=2) -> Context:
    return gen.context(rng, src.covariant, tgt.covariant, tgt.contravariant, max_theta)


def _square_data(rng):
    phi, psi, xi = (gen.interface(rng, 3) for _ in range(3))
    phi2, psi2, xi2 = (gen.interface(rng, 3) for _ in range(3))
    l, m = gen.lens(rng, phi, psi, 3), gen.lens(rng, psi, xi, 3)
    l2, m2 = gen.lens(rng, phi2, psi2, 3), gen.lens(rng, psi2, xi2, 3)
    c = _tensor_context(rng, phi.tensor(phi2), xi.tensor(xi2))
    return l, m, l2, m2, c


def localization_square_1(rng):
    l, m, l2, m2, c = _square_data(rng)
    a = seq_local_first(tensor_local_left(c, lens_compose(m2, l2)), m)
    b = tensor_local_left(seq_local_first(c, lens_tensor(m, m2)), l2)
    return context_eq(a, b)


def localization_square_2(rng):
    l, m, l2, m2, c = _square_data(rng)
    a = seq_local_second(tensor_local_left(c, lens_compose(m2, l2)), l)
    b = tensor_local_left(seq_local_second(c, lens_tensor(l, l2)), m2)
    return context_eq(a, b)


def localization_square_3(rng):
    l, m, l2, m2, c = _square_data(rng)
    a = seq_local_first(tensor_local_right(c, lens_compose(m, l)), m2)
    b = tensor_local_right(seq_local_first(c, lens_tensor(m, m2)), l)
    return context_eq(a, b)


def localization_square_4(rng):
    l, m, l2, m2, c = _square_data(rng)
    a = seq_local_second(tensor_local_right(c, lens_compose(m, l)), l2)
    b = tensor_local_right(seq_local_second(c, lens_tensor(l, l2)), m)
    return context_eq(a, b)


def seq_localization_associativity(rng):
    """Localising through ``k . h`` at once equals localising through ``k`` then ``h``."""
    phi, psi, xi, up = (gen.interface(rng, 2) for _ in range(4))
    g, h, k = gen.lens(rng, phi, psi, 2), gen.lens(rng, psi, xi, 2), gen.lens(rng, xi, up, 2)
    c = _tensor_context(rng, phi, up)
    first = context_eq(seq_local_first(c, lens_compose(k, h)), seq_local_first(seq_local_first(c, k), h))
    second = context_eq(seq_local_second(c, lens_compose(h, g)), seq_local_second(seq_local_second(c, g), h))
    return first and second


def reassociate_context(c: Context) -> Context:
    """Move a context for ``P x (Q x R)`` to one for ``(P x Q) x R``."""
    obs, acts, pays = c.observations, c.actions, c.payoffs

    def left_nest(space):
        p, qr = space.factors
        q, r = qr.factors
        return product_space(product_space(p, q), r)

    obs2, acts2, pays2 = left_nest(obs), left_nest(acts), left_nest(pays)
    hist = pushforward(c.history, lambda tx: (tx[0], ((tx[1][0], tx[1][1][0]), tx[1][1][1])),
                       product_space(c.theta, obs2))
    k = c.continuation

    def cont(ty):
        t, ((a, b), cc) = ty
        return pushforward(k((t, (a, (b, cc)))), lambda r: ((r[0], r[1][0]), r[1][1]), pays2)

    return make_context(c.theta, hist, Kernel.from_fn(product_space(c.theta, acts2), pays2, cont))


def nested_tensor_coherence(rng):
    faces = [(gen.interface(rng, 2), gen.interface(rng, 2)) for _ in range(3)]
    (s1, t1), (s2, t2), (s3, t3) = faces
    l2, l3 = gen.lens(rng, s2, t2, 2), gen.lens(rng, s3, t3, 2)
    l1 = gen.lens(rng, s1, t1, 2)
    c = _tensor_context(rng, s1.tensor(s2.tensor(s3)), t1.tensor(t2.tensor(t3)))
    c2 = reassociate_context(c)
    g1_right = tensor_local_left(c, lens_tensor(l2, l3))
    g1_left = tensor_local_left(tensor_local_left(c2, l3), l2)
    g3_right = tensor_local_right(tensor_local_right(c, l1), l2)
    g3_left = tensor_local_right(c2, lens_tensor(l1, l2))
    return context_eq(g1_right, g1_left) and context_eq(g3_right, g3_left)


# -- Dirac specialisation against the concrete formulas ------------------------

def concrete_lens(source: LensInterface, target: LensInterface, view: dict, update: dict) -> Lens:
    """Embed a concrete lens ``(view : X -> Y, update : X x R -> S)``."""
    x = source.covariant
    fwd = Kernel.deterministic(x, product_space(x, target.covariant), lambda v: (v, view[v]))
    bwd = Kernel.deterministic(product_space(x, target.contravariant), source.contravariant,
                               lambda xr: update[xr])
    return make_lens(source, target, x, fwd, bwd)


def random_concrete(rng, source: LensInterface, target: LensInterface):
    view = {x: rng.choice(target.covariant.elements) for x in source.covariant}
    update = {(x, r): rng.choice(source.contravariant.elements)
              for x in source.covariant for r in target.contravariant}
    return view, update


def dirac_compose(rng):
    a, b, c = (gen.interface(rng, 4) for _ in range(3))
    lv, lu = random_concrete(rng, a, b)
    tv, tu = random_concrete(rng, b, c)
    view = {x: tv[lv[x]] for x in a.covariant}
    update = {(x, q): lu[(x, tu[(lv[x], q)])] for x in a.covariant for q in c.contravariant}
    composite = lens_compose(concrete_lens(b, c, tv, tu), concrete_lens(a, b, lv, lu))
    return canonicalize(composite) == canonicalize(concrete_lens(a, c, view, update))


def dirac_tensor(rng):
    a1, b1, a2, b2 = (gen.interface(rng, 4) for _ in range(4))
    v1, u1 = random_concrete(rng, a1, b1)
    v2, u2 = random_concrete(rng, a2, b2)
    src, tgt = a1.tensor(a2), b1.tensor(b2)
    view = {(x1, x2): (v1[x1], v2[x2]) for x1, x2 in src.covariant}
    update = {((x1, x2), (r1, r2)): (u1[(x1, r1)], u2[(x2, r2)])
              for x1, x2 in src.covariant for r1, r2 in tgt.contravariant}
    tens = lens_tensor(concrete_lens(a1, b1, v1, u1), concrete_lens(a2, b2, v2, u2))
    return canonicalize(tens) == canonicalize(concrete_lens(src, tgt, view, update))


def _fn_kernel(dom: FiniteSet, cod: FiniteSet, table: dict) -> Kernel:
    return Kernel.deterministic(dom, cod, table.__getitem__)


def dirac_tensor_left(rng):
    g_src, g_tgt, h_src, h_tgt = (gen.interface(rng, 4) for _ in range(4))
    pv, pu = random_concrete(rng, h_src, h_tgt)
    src, tgt = g_src.tensor(h_src), g_tgt.tensor(h_tgt)
    x = rng.choice(src.covariant.elements)
    k = {y: rng.choice(tgt.contravariant.elements) for y in tgt.covariant}
    engine = tensor_local_left(point_context(x, src.covariant, _fn_kernel(tgt.covariant, tgt.contravariant, k)),
                               concrete_lens(h_src, h_tgt, pv, pu))
    # leftc(x', p', k)(y) = first component of k(y, p'(x'))
    local = {y: k[(y, pv[x[1]])][0] for y in g_tgt.covariant}
    expected = point_context(x[0], g_src.covariant, _fn_kernel(g_tgt.covariant, g_tgt.contravariant, local))
    return context_eq(engine, expected)


def dirac_tensor_right(rng):
    g_src, g_tgt, h_src, h_tgt = (gen.interface(rng, 4) for _ in range(4))
    pv, pu = random_concrete(rng, g_src, g_tgt)
    src, tgt = g_src.tensor(h_src), g_tgt.tensor(h_tgt)
    x = rng.choice(src.covariant.elements)
    k = {y: rng.choice(tgt.contravariant.elements) for y in tgt.covariant}
    engine = tensor_local_right(point_context(x, src.covariant, _fn_kernel(tgt.covariant, tgt.contravariant, k)),
                                concrete_lens(g_src, g_tgt, pv, pu))
    local = {y: k[(pv[x[0]], y)][1] for y in h_tgt.covariant}
    expected = point_context(x[1], h_src.covariant, _fn_kernel(h_tgt.covariant, h_tgt.contravariant, local))
    return context_eq(engine, expected)


def dirac_seq_first(rng):
    phi, psi, xi = (gen.interface(rng, 4) for _ in range(3))
    hv, hu = random_concrete(rng, psi, xi)
    x = rng.choice(phi.covariant.elements)
    k = {z: rng.choice(xi.contravariant.elements) for z in xi.covariant}
    engine = seq_local_first(point_context(x, phi.covariant, _fn_kernel(xi.covariant, xi.contravariant, k)),
                             concrete_lens(psi, xi, hv, hu))
    # k . play_H(tau) as a concrete effect: y -> h_u(y, k(h_v(y)))
    local = {y: hu[(y, k[hv[y]])] for y in psi.covariant}
    expected = point_context(x, phi.covariant, _fn_kernel(psi.covariant, psi.contravariant, local))
    return context_eq(engine, expected)


def dirac_seq_second(rng):
    phi, psi, xi = (gen.interface(rng, 4) for _ in range(3))
    gv, gu = random_concrete(rng, phi, psi)
    x = rng.choice(phi.covariant.elements)
    k = _fn_kernel(xi.covariant, xi.contravariant,
                   {z: rng.choice(xi.contravariant.elements) for z in xi.covariant})
    engine = seq_local_second(point_context(x, phi.covariant, k), concrete_lens(phi, psi, gv, gu))
    return context_eq(engine, point_context(gv[x], psi.covariant, k))


FAMILIES: Dict[str, List[Tuple[str, Law]]] = {
    "monad": [
        ("left_unit", monad_left_unit),
        ("right_unit", monad_right_unit),
        ("associativity", monad_associativity),
        ("commutativity", commutativity),
        ("update_naturality", update_naturality),
        ("expectation_linearity", expectation_linearity),
        ("marginal_of_product", marginal_of_product),
    ],
    "lens_category": [
        ("associativity", lens_associativity),
        ("left_unit", lens_left_unit),
        ("right_unit", lens_right_unit),
        ("canonical_roundtrip", canonical_roundtrip),
        ("sliding", sliding),
    ],
    "monoidal": [
        ("tensor_functoriality", tensor_functoriality),
        ("tensor_identity", tensor_identity),
        ("swap_naturality", swap_naturality),
        ("swap_involution", swap_involution),
        ("associator_naturality", associator_naturality),
        ("associator_inverse", associator_inverse),
        ("left_unitor_naturality", left_unitor_naturality),
        ("right_unitor_naturality", right_unitor_naturality),
        ("pentagon", pentagon),
        ("triangle", triangle),
        ("hexagon", hexagon),
    ],
    "localization": [
        ("square_1", localization_square_1),
        ("square_2", localization_square_2),
        ("square_3", localization_square_3),
        ("square_4", localization_square_4),
        ("sequential_associativity", seq_localization_associativity),
        ("nested_tensor_coherence", nested_tensor_coherence),
    ],
    "dirac": [
        ("compose", dirac_compose),
        ("tensor", dirac_tensor),
        ("tensor_left", dirac_tensor_left),
        ("tensor_right", dirac_tensor_right),
        ("seq_first", dirac_seq_first),
        ("seq_second", dirac_seq_second),
    ],
}


def run_law(family: str, name: str, law: Law, cases: int, seed: int) -> Tuple[int, int]:
    rng = random.Random(f"{seed}:{family}.{name}")
    passed = sum(1 for _ in range(cases) if law(rng))
    return passed, cases - passed


def run_laws(cases: int = 100, seed: int = 0, families: Optional[Iterable[str]] = None) -> Dict[str, Dict[str, dict]]:
    selected = list(FAMILIES) if families is None else list(families)
    report: Dict[str, Dict[str, dict]] = {}
    for fam in selected:
        report[fam] = {}
        for name, law in FAMILIES[fam]:
            passed, failed = run_law(fam, name, law, cases, seed)
            report[fam][name] = {"passed": passed, "failed": failed}
    return report
