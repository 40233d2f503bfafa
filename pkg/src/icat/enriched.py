"""Categories enriched in an internal monoidal category, with their 2-cells.

comp(x0, x1, x2): Hom(x1, x2) ⊗ Hom(x0, x1) → Hom(x0, x2); ident(x): I → Hom(x, x).
"""

from itertools import product as _cartesian

from .ambient import FiniteMap, FiniteSet, equalizer, power, product, pullback
from .internal_cat import (
    EndpointMismatch, InternalCategory, InternalFunctor, InternalNat, MalformedData,
)
from .monoidal import IllTyped
from .report import CheckReport, DEFAULT_WITNESS_LIMIT


class EnrichedCategory:
    __slots__ = ("v", "carrier", "hom", "comp", "ident", "name")

    def __init__(self, v, carrier, hom, comp, ident, name=""):
        if hom.dom != product(carrier, carrier).apex or hom.cod != v.base.obj:
            raise MalformedData("hom must be a map X×X → V0")
        if comp.dom != power(carrier, 3) or comp.cod != v.base.arr:
            raise MalformedData("comp must be a map X×X×X → V1")
        if ident.dom != carrier or ident.cod != v.base.arr:
            raise MalformedData("ident must be a map X → V1")
        self.v, self.carrier = v, carrier
        self.hom, self.comp, self.ident = hom, comp, ident
        self.name = name

    def h(self, x0, x1):
        return self.hom.table[(x0, x1)]

    def c(self, x0, x1, x2):
        return self.comp.table[(x0, x1, x2)]

    def e(self, x):
        return self.ident.table[x]

    def encode(self):
        return ("enriched", self.v.encode(), self.carrier.encode(), self.hom.encode(),
                self.comp.encode(), self.ident.encode())

    def __eq__(self, other):
        return isinstance(other, EnrichedCategory) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        return f"EnrichedCategory({self.name or '_'} over {self.v.name}, {len(self.carrier)} objects)"


def make_enriched(v, elems, hom, comp, ident, name=""):
    X = FiniteSet(elems, name=name)
    return EnrichedCategory(
        v, X,
        FiniteMap(product(X, X).apex, v.base.obj, hom),
        FiniteMap(power(X, 3), v.base.arr, comp),
        FiniteMap(X, v.base.arr, ident),
        name,
    )


def _comp_typed(x, x0, x1, x2):
    v = x.v
    return v.has_arrow(x.c(x0, x1, x2), v.t0(x.h(x1, x2), x.h(x0, x1)), x.h(x0, x2))


def _ident_typed(x, a):
    return x.v.has_arrow(x.e(a), x.v.I, x.h(a, a))


def _safe(fn):
    try:
        return fn()
    except IllTyped:
        return None


def check_enriched_category(x, limit=DEFAULT_WITNESS_LIMIT):
    v = x.v
    X = x.carrier.elems
    r = CheckReport(x.name or "enriched category", limit)
    ctyped = {t: _comp_typed(x, *t) for t in _cartesian(X, repeat=3)}
    ityped = {a: _ident_typed(x, a) for a in X}
    r.record("enriched/typing.comp", (t for t, ok in ctyped.items() if not ok))
    r.record("enriched/typing.ident", ((a,) for a, ok in ityped.items() if not ok))
    bad = []
    for x0, x1, x2, x3 in _cartesian(X, repeat=4):
        if not all(ctyped[t] for t in ((x0, x1, x3), (x1, x2, x3), (x0, x2, x3), (x0, x1, x2))):
            continue
        h01, h12, h23 = x.h(x0, x1), x.h(x1, x2), x.h(x2, x3)
        lhs = _safe(lambda: v.comp(x.c(x0, x1, x3), v.t1(x.c(x1, x2, x3), v.ident(h01))))
        rhs = _safe(lambda: v.comp(x.c(x0, x2, x3), v.t1(v.ident(h23), x.c(x0, x1, x2)),
                                   v.alpha(h23, h12, h01)))
        if lhs != rhs:
            bad.append((x0, x1, x2, x3))
    r.record("enriched/assoc", bad)
    bad_l, bad_r = [], []
    for x0, x1 in _cartesian(X, repeat=2):
        h01 = x.h(x0, x1)
        if ctyped[(x0, x1, x1)] and ityped[x1]:
            lhs = _safe(lambda: v.comp(x.c(x0, x1, x1), v.t1(x.e(x1), v.ident(h01))))
            if lhs != v.lam(h01):
                bad_l.append((x0, x1))
        if ctyped[(x0, x0, x1)] and ityped[x0]:
            lhs = _safe(lambda: v.comp(x.c(x0, x0, x1), v.t1(v.ident(h01), x.e(x0))))
            if lhs != v.rho(h01):
                bad_r.append((x0, x1))
    r.record("enriched/left_unit", bad_l)
    r.record("enriched/right_unit", bad_r)
    return r


class EnrichedFunctor:
    __slots__ = ("dom", "cod", "f0", "f1", "name")

    def __init__(self, dom, cod, f0, f1, name=""):
        if dom.v != cod.v:
            raise EndpointMismatch("enriched functor between categories over different bases")
        if f0.dom != dom.carrier or f0.cod != cod.carrier:
            raise MalformedData("object component has wrong endpoints")
        if f1.dom != dom.hom.dom or f1.cod != dom.v.base.arr:
            raise MalformedData("hom component must be a map X×X → V1")
        self.dom, self.cod, self.f0, self.f1, self.name = dom, cod, f0, f1, name

    def F0(self, a):
        return self.f0.table[a]

    def F1(self, a, b):
        return self.f1.table[(a, b)]

    def encode(self):
        return ("efunctor", self.dom.encode(), self.cod.encode(), self.f0.encode(), self.f1.encode())

    def __eq__(self, other):
        return isinstance(other, EnrichedFunctor) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        return f"EnrichedFunctor({self.name or '_'})"


def make_enriched_functor(dom, cod, f0, f1, name=""):
    return EnrichedFunctor(dom, cod, FiniteMap(dom.carrier, cod.carrier, f0),
                           FiniteMap(dom.hom.dom, dom.v.base.arr, f1), name)


def check_enriched_functor(fn, limit=DEFAULT_WITNESS_LIMIT):
    X, Y, v = fn.dom, fn.cod, fn.dom.v
    elems = X.carrier.elems
    r = CheckReport(fn.name or "enriched functor", limit)
    typed = {}
    for a, b in _cartesian(elems, repeat=2):
        typed[(a, b)] = v.has_arrow(fn.F1(a, b), X.h(a, b), Y.h(fn.F0(a), fn.F0(b)))
    r.record("functor/typing", (k for k, ok in typed.items() if not ok))
    bad = []
    for x0, x1, x2 in _cartesian(elems, repeat=3):
        if not (typed[(x0, x1)] and typed[(x1, x2)] and typed[(x0, x2)]):
            continue
        lhs = _safe(lambda: v.comp(fn.F1(x0, x2), X.c(x0, x1, x2)))
        rhs = _safe(lambda: v.comp(Y.c(fn.F0(x0), fn.F0(x1), fn.F0(x2)),
                                   v.t1(fn.F1(x1, x2), fn.F1(x0, x1))))
        if lhs != rhs:
            bad.append((x0, x1, x2))
    r.record("functor/comp", bad)
    bad = []
    for a in elems:
        if not typed[(a, a)]:
            continue
        lhs = _safe(lambda: v.comp(fn.F1(a, a), X.e(a)))
        if lhs != Y.e(fn.F0(a)):
            bad.append((a,))
    r.record("functor/ident", bad)
    return r


def identity_enriched_functor(x):
    return make_enriched_functor(x, x, {a: a for a in x.carrier},
                                 {k: x.v.ident(h) for k, h in x.hom.items()}, f"id({x.name})")


def compose_enriched_functors(f, g):
    """g after f."""
    if f.cod != g.dom:
        raise EndpointMismatch("enriched functors are not composable")
    v = f.dom.v
    f0 = {a: g.F0(f.F0(a)) for a in f.dom.carrier}
    f1 = {(a, b): v.comp(g.F1(f.F0(a), f.F0(b)), f.F1(a, b)) for (a, b) in f.dom.hom.dom}
    return make_enriched_functor(f.dom, g.cod, f0, f1, f"{g.name}∘{f.name}")


class EnrichedNat:
    __slots__ = ("src_f", "tgt_f", "component", "name")

    def __init__(self, src_f, tgt_f, component, name=""):
        if src_f.dom != tgt_f.dom or src_f.cod != tgt_f.cod:
            raise EndpointMismatch("transformation between non-parallel enriched functors")
        if component.dom != src_f.dom.carrier or component.cod != src_f.dom.v.base.arr:
            raise MalformedData("component must be a map X → V1")
        self.src_f, self.tgt_f, self.component, self.name = src_f, tgt_f, component, name

    def __call__(self, a):
        return self.component.table[a]

    def encode(self):
        return ("enat", self.src_f.encode(), self.tgt_f.encode(), self.component.encode())

    def __eq__(self, other):
        return isinstance(other, EnrichedNat) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())


def make_enriched_nat(src_f, tgt_f, component, name=""):
    return EnrichedNat(src_f, tgt_f, FiniteMap(src_f.dom.carrier, src_f.dom.v.base.arr, component), name)


def check_enriched_nat(n, limit=DEFAULT_WITNESS_LIMIT):
    F, G = n.src_f, n.tgt_f
    X, Y, v = F.dom, F.cod, F.dom.v
    elems = X.carrier.elems
    r = CheckReport(n.name or "enriched nat", limit)
    typed = {a: v.has_arrow(n(a), v.I, Y.h(F.F0(a), G.F0(a))) for a in elems}
    r.record("nat/typing", ((a,) for a, ok in typed.items() if not ok))
    bad = []
    for x0, x1 in _cartesian(elems, repeat=2):
        if not (typed[x0] and typed[x1]):
            continue
        h = X.h(x0, x1)
        Fx0, Fx1, Gx0, Gx1 = F.F0(x0), F.F0(x1), G.F0(x0), G.F0(x1)
        lhs = _safe(lambda: v.comp(Y.c(Fx0, Fx1, Gx1), v.t1(n(x1), F.F1(x0, x1)), v.inv(v.lam(h))))
        rhs = _safe(lambda: v.comp(Y.c(Fx0, Gx0, Gx1), v.t1(G.F1(x0, x1), n(x0)), v.inv(v.rho(h))))
        if lhs is None or rhs is None or lhs != rhs:
            bad.append((x0, x1))
    r.record("nat/naturality", bad)
    return r


def identity_enriched_nat(fn):
    return make_enriched_nat(fn, fn, {a: fn.cod.e(fn.F0(a)) for a in fn.dom.carrier}, f"id({fn.name})")


def vcompose_enriched_nats(a, b):
    """b after a: (b·a)(x) = comp(Fx, Gx, Hx) ∘ (b(x) ⊗ a(x)) ∘ λ_I⁻¹."""
    if a.tgt_f != b.src_f:
        raise EndpointMismatch("transformations are not vertically composable")
    F, G, H = a.src_f, a.tgt_f, b.tgt_f
    Y, v = F.cod, F.dom.v
    linv = v.inv(v.lam(v.I))
    comp = {x: v.comp(Y.c(F.F0(x), G.F0(x), H.F0(x)), v.t1(b(x), a(x)), linv) for x in F.dom.carrier}
    return make_enriched_nat(F, H, comp)


def lwhisker(n, l):
    """n∘L for L: W→X and n: F⇒G: X→Y."""
    if l.cod != n.src_f.dom:
        raise EndpointMismatch("whiskering functor does not land in the domain")
    comp = {w: n(l.F0(w)) for w in l.dom.carrier}
    return make_enriched_nat(compose_enriched_functors(l, n.src_f), compose_enriched_functors(l, n.tgt_f), comp)


def rwhisker(r, n):
    """R∘n for n: G⇒H: X→Y and R: Y→Z."""
    if n.src_f.cod != r.dom:
        raise EndpointMismatch("whiskering functor does not start at the codomain")
    v = r.dom.v
    G, H = n.src_f, n.tgt_f
    comp = {x: v.comp(r.F1(G.F0(x), H.F0(x)), n(x)) for x in G.dom.carrier}
    return make_enriched_nat(compose_enriched_functors(G, r), compose_enriched_functors(H, r), comp)


def hcompose_enriched_nats(a, b):
    """b∗a = (K a)·(b F) for a: F⇒G: X→Y and b: H⇒K: Y→Z."""
    return vcompose_enriched_nats(lwhisker(b, a.src_f), rwhisker(b.tgt_f, a))


def underlying_category(x):
    v = x.v
    V0, V1 = v.base.obj, v.base.arr
    X = x.carrier
    cube = FiniteSet((a, b, f) for a in X for b in X for f in V1)
    pairs = product(V0, V0).apex
    typing = FiniteMap(cube, pairs, {t: (v.src(t[2]), v.tgt(t[2])) for t in cube})
    expected = FiniteMap(cube, pairs, {t: (v.I, x.h(t[0], t[1])) for t in cube})
    arr = equalizer(typing, expected).apex
    src = FiniteMap(arr, X, {t: t[0] for t in arr})
    tgt = FiniteMap(arr, X, {t: t[1] for t in arr})
    ids = FiniteMap(X, arr, {a: (a, a, x.e(a)) for a in X})
    linv = v.inv(v.lam(v.I)) if len(X) else None
    comp = {}
    for g in arr:
        for f in arr:
            if f[1] != g[0]:
                continue
            x0, x1, x2 = f[0], f[1], g[1]
            comp[(g, f)] = (x0, x2, v.comp(x.c(x0, x1, x2), v.t1(g[2], f[2]), linv))
    apex = pullback(src, tgt).apex
    return InternalCategory(X, arr, src, tgt, ids, FiniteMap(apex, arr, comp), f"U({x.name})")


def underlying_functor(fn):
    v = fn.dom.v
    UX, UY = underlying_category(fn.dom), underlying_category(fn.cod)
    f1 = {t: (fn.F0(t[0]), fn.F0(t[1]), v.comp(fn.F1(t[0], t[1]), t[2])) for t in UX.arr}
    return InternalFunctor(UX, UY, FiniteMap(UX.obj, UY.obj, fn.f0.table), FiniteMap(UX.arr, UY.arr, f1),
                           f"U({fn.name})")


def underlying_nat(n):
    UF, UG = underlying_functor(n.src_f), underlying_functor(n.tgt_f)
    comp = {a: (n.src_f.F0(a), n.tgt_f.F0(a), n(a)) for a in n.src_f.dom.carrier}
    return InternalNat(UF, UG, FiniteMap(UF.dom.obj, UF.cod.arr, comp))


def indiscrete_enriched(s, v, name=""):
    I = v.I
    lam_I = v.lam(I)
    elems = s.elems
    return make_enriched(
        v, elems,
        {(a, b): I for a in elems for b in elems},
        {t: lam_I for t in _cartesian(elems, repeat=3)},
        {a: v.ident(I) for a in elems},
        name or f"Ind({s.name})",
    )


def change_enriching_base(mf, x, name=""):
    """Transport along a monoidal functor F: hom' = F∘hom,
    comp' = F(comp)∘μ, ident' = F(ident)∘ε."""
    if x.v != mf.dom:
        raise EndpointMismatch("enriched category is not over the functor's domain")
    W = mf.cod
    hom = {k: mf.F0(h) for k, h in x.hom.items()}
    comp = {(a, b, c): W.comp(mf.F1(x.c(a, b, c)), mf.m(x.h(b, c), x.h(a, b)))
            for (a, b, c) in x.comp.dom}
    ident = {a: W.comp(mf.F1(x.e(a)), mf.eps) for a in x.carrier}
    return make_enriched(W, x.carrier.elems, hom, comp, ident, name or x.name)


def change_base_functor(mf, fn):
    dom = change_enriching_base(mf, fn.dom)
    cod = change_enriching_base(mf, fn.cod)
    f1 = {k: mf.F1(f) for k, f in fn.f1.items()}
    return make_enriched_functor(dom, cod, fn.f0.table, f1, fn.name)


def change_base_nat(mf, n):
    W = mf.cod
    F = change_base_functor(mf, n.src_f)
    G = change_base_functor(mf, n.tgt_f)
    comp = {a: W.comp(mf.F1(n(a)), mf.eps) for a in n.src_f.dom.carrier}
    return make_enriched_nat(F, G, comp, n.name)
