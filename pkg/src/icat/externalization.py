"""Fibers of the externalization, reindexing, Grothendieck totals and enriched fibers.

A family X → A0 is stored as a tuple aligned with the canonical order of X;
an arrow of a fiber is a tuple of A1-atoms (a section of the pulled-back
arrow object). Because sections are tuples rather than maps into a chosen
pullback, reindexing is plain precomposition and composes on the nose.
"""

from functools import lru_cache
from itertools import product as _cartesian

from .ambient import (
    DomainMismatch, FiniteMap, FiniteSet, compose_map, diagonal, identity_map, map_product,
    power, product, pullback, terminal,
)
from .enriched import (
    EnrichedFunctor, change_enriching_base, make_enriched, make_enriched_functor, underlying_category,
)
from .internal_cat import InternalCategory, InternalFunctor, MalformedData, check_category, check_functor
from .monoidal import IllTyped, MonoidalFunctorData, make_monoidal
from .report import CheckReport, DEFAULT_WITNESS_LIMIT


class MalformedFamily(Exception):
    pass


class FamilyNotProductClosed(Exception):
    pass


class IncoherentFiberData(Exception):
    pass


class FiberTooLarge(ValueError):
    pass


# V[X]×V[X] is tabulated eagerly; its composition table has |comp|^(2|X|) entries
MAX_PRODUCT_COMPOSITES = 2_000_000


def positions(s):
    return {a: k for k, a in enumerate(s.elems)}


def pull(u, t):
    """Reindex a family (or section) t over u.cod along u."""
    pos = positions(u.cod)
    return tuple(t[pos[u(a)]] for a in u.dom)


def family_map(index, cod, t):
    return FiniteMap(index, cod, zip(index.elems, t))


class Fiber:
    """The ordinary category of X-indexed families of objects and arrows of A."""

    def __init__(self, base, index):
        self.base = base
        self.index = index
        self._cat = None

    @property
    def n_objects(self):
        return len(self.base.obj) ** len(self.index)

    def objects(self):
        return _cartesian(self.base.obj.elems, repeat=len(self.index))

    def src(self, s):
        return tuple(self.base.src.table[f] for f in s)

    def tgt(self, s):
        return tuple(self.base.tgt.table[f] for f in s)

    def identity(self, x):
        return tuple(self.base.ids.table[a] for a in x)

    def compose(self, g, f):
        return tuple(self.base.comp.table[(gi, fi)] for gi, fi in zip(g, f))

    def arrows(self, x0, x1):
        return _cartesian(*(self.base.hom(a, b) for a, b in zip(x0, x1)))

    def category(self):
        if self._cat is None:
            self._cat = _materialize_fiber(self.base, self.index)
        return self._cat


@lru_cache(maxsize=None)
def _materialize_fiber(base, index):
    n = len(index)
    obj = power(base.obj, n, name=f"{base.name}[{index.name}]0")
    arr = power(base.arr, n, name=f"{base.name}[{index.name}]1")
    S, T, ID = base.src.table, base.tgt.table, base.ids.table
    src = FiniteMap(arr, obj, {s: tuple(S[f] for f in s) for s in arr})
    tgt = FiniteMap(arr, obj, {s: tuple(T[f] for f in s) for s in arr})
    ids = FiniteMap(obj, arr, {x: tuple(ID[a] for a in x) for x in obj})
    items = list(base.comp.items())
    comp = {}
    for combo in _cartesian(items, repeat=n):
        g = tuple(k[0][0] for k in combo)
        f = tuple(k[0][1] for k in combo)
        comp[(g, f)] = tuple(k[1] for k in combo)
    apex = pullback(src, tgt).apex
    return InternalCategory(obj, arr, src, tgt, ids, FiniteMap(apex, arr, comp), f"{base.name}[{index.name}]")


@lru_cache(maxsize=None)
def fiber(a, x):
    return Fiber(a, x)


def fiber_iso_terminal(a):
    """The isomorphism A ≅ fiber(A, 1) on objects and arrows."""
    c = fiber(a, terminal()).category()
    f0 = FiniteMap(a.obj, c.obj, {o: (o,) for o in a.obj})
    f1 = FiniteMap(a.arr, c.arr, {f: (f,) for f in a.arr})
    return InternalFunctor(a, c, f0, f1, "A≅A[1]")


def reindex(u, fib):
    """u*: fiber(A, X) → fiber(A, X') for u: X' → X."""
    if u.cod != fib.index:
        raise DomainMismatch("reindexing map does not land in the fiber's index")
    src = fib.category()
    tgt = fiber(fib.base, u.dom).category()
    f0 = FiniteMap(src.obj, tgt.obj, {x: pull(u, x) for x in src.obj})
    f1 = FiniteMap(src.arr, tgt.arr, {s: pull(u, s) for s in src.arr})
    return InternalFunctor(src, tgt, f0, f1, "reindex")


@lru_cache(maxsize=None)
def fiber_monoidal(v, x):
    """Pointwise monoidal structure on fiber(V, X); the unit is the constant family at I."""
    n = len(x)
    size = len(v.base.comp.dom) ** (2 * n)
    if size > MAX_PRODUCT_COMPOSITES:
        raise FiberTooLarge(f"monoidal fiber of {v.name} over a {n}-element set needs {size} composites")
    base = fiber(v.base, x).category()
    objs, arrs = base.obj.elems, base.arr.elems
    t0 = {(a, b): tuple(v.t0(p, q) for p, q in zip(a, b)) for a in objs for b in objs}
    t1 = {(f, g): tuple(v.t1(p, q) for p, q in zip(f, g)) for f in arrs for g in arrs}
    assoc = {(a, b, c): tuple(v.alpha(p, q, r) for p, q, r in zip(a, b, c))
             for a in objs for b in objs for c in objs}
    lunit = {a: tuple(v.lam(p) for p in a) for a in objs}
    runit = {a: tuple(v.rho(p) for p in a) for a in objs}
    return make_monoidal(base, t0, t1, (v.I,) * n, assoc, lunit, runit, f"{v.name}[{x.name}]")


def reindex_monoidal_functor(v, u):
    """u* as a strict monoidal functor between pointwise fiber structures."""
    V = fiber_monoidal(v, u.cod)
    W = fiber_monoidal(v, u.dom)
    f = reindex(u, fiber(v.base, u.cod))
    mu = FiniteMap(power(V.base.obj, 2), W.base.arr,
                   {(a, b): W.ident(pull(u, V.t0(a, b))) for a in V.base.obj for b in V.base.obj})
    return MonoidalFunctorData(V, W, f, W.ident(W.I), mu, "reindex*")


def check_reindex_strict(a, u, w, limit=DEFAULT_WITNESS_LIMIT):
    """(w∘u)* == u*∘w* as tables, for u: X''→X', w: X'→X."""
    from .internal_cat import compose_functors
    r = CheckReport("reindex strictness", limit)
    lhs = reindex(compose_map(u, w), fiber(a, w.cod))
    rhs = compose_functors(reindex(w, fiber(a, w.cod)), reindex(u, fiber(a, u.cod)))
    r.record("strict/objects", ((x,) for x in lhs.dom.obj if lhs.f0(x) != rhs.f0(x)))
    r.record("strict/arrows", ((s,) for s in lhs.dom.arr if lhs.f1(s) != rhs.f1(s)))
    return r


def _pointwise(op, *families):
    return tuple(op(*xs) for xs in zip(*families))


def check_reindex_tensor(v, u, limit=DEFAULT_WITNESS_LIMIT):
    """u*(a ⊗ b) == u*a ⊗ u*b and likewise on arrows and unit, with ⊗ computed pointwise."""
    fib = fiber(v.base, u.cod)
    r = CheckReport("reindex tensor", limit)
    objs = list(fib.objects())
    arrs = list(_cartesian(v.base.arr.elems, repeat=len(u.cod)))
    r.record("strict/tensor.objects", ((a, b) for a in objs for b in objs
                                       if pull(u, _pointwise(v.t0, a, b))
                                       != _pointwise(v.t0, pull(u, a), pull(u, b))))
    r.record("strict/tensor.arrows", ((f, g) for f in arrs for g in arrs
                                      if pull(u, _pointwise(v.t1, f, g))
                                      != _pointwise(v.t1, pull(u, f), pull(u, g))))
    r.record("strict/unit", [] if pull(u, (v.I,) * len(u.cod)) == (v.I,) * len(u.dom) else [(v.I,)])
    return r


# ---------------------------------------------------------------- Grothendieck


def _map_atom(labels, u):
    return (labels[u.dom], labels[u.cod], tuple(u(a) for a in u.dom))


class TotalCategory:
    def __init__(self, base_cat, family, labels, index_cat, maps, total, projection):
        self.base_cat = base_cat
        self.family = family
        self.labels = labels
        self.index_cat = index_cat
        self.maps = maps
        self.total = total
        self.projection = projection

    def lift(self, u, y):
        """Chosen cartesian arrow over u: X'→X ending at y over X."""
        a = self.base_cat
        yu = pull(u, y)
        return (_map_atom(self.labels, u), yu, y, tuple(a.identity(b) for b in yu))


def _closure(family, connecting, labels):
    arrows = {}
    for s in family:
        u = identity_map(s)
        arrows[_map_atom(labels, u)] = u
    for u in connecting:
        arrows[_map_atom(labels, u)] = u
    changed = True
    while changed:
        changed = False
        for f in list(arrows.values()):
            for g in list(arrows.values()):
                if f.cod == g.dom:
                    h = compose_map(f, g)
                    k = _map_atom(labels, h)
                    if k not in arrows:
                        arrows[k] = h
                        changed = True
    return arrows


def _family_labels(family):
    labels = {}
    for k, s in enumerate(family):
        if s in labels:
            raise MalformedFamily(f"family member {k} repeats an earlier member")
        labels[s] = s.name if s.name and s.name not in labels.values() else f"X{k}"
    return labels


def grothendieck(a, family, connecting):
    family = list(family)
    if not family:
        raise MalformedFamily("empty index family")
    labels = _family_labels(family)
    for u in connecting:
        if u.dom not in labels or u.cod not in labels:
            raise MalformedFamily("connecting map between sets outside the family")
    maps = _closure(family, connecting, labels)
    idx_obj = FiniteSet(labels.values(), name="index")
    idx_arr = FiniteSet(maps, name="index maps")
    isrc = FiniteMap(idx_arr, idx_obj, {k: k[0] for k in maps})
    itgt = FiniteMap(idx_arr, idx_obj, {k: k[1] for k in maps})
    iids = FiniteMap(idx_obj, idx_arr, {labels[s]: _map_atom(labels, identity_map(s)) for s in family})
    iapex = pullback(isrc, itgt).apex
    icomp = FiniteMap(iapex, idx_arr, {(g, f): _map_atom(labels, compose_map(maps[f], maps[g]))
                                       for (g, f) in iapex})
    index_cat = InternalCategory(idx_obj, idx_arr, isrc, itgt, iids, icomp, "index")

    objects = []
    for s in family:
        for x in fiber(a, s).objects():
            objects.append((labels[s], x))
    arrows = []
    for k, u in maps.items():
        for y in fiber(a, u.cod).objects():
            yu = pull(u, y)
            for x in fiber(a, u.dom).objects():
                for f in fiber(a, u.dom).arrows(x, yu):
                    arrows.append((k, x, y, f))
    obj = FiniteSet(objects, name="total0")
    arr = FiniteSet(arrows, name="total1")
    src = FiniteMap(arr, obj, {t: (t[0][0], t[1]) for t in arr})
    tgt = FiniteMap(arr, obj, {t: (t[0][1], t[2]) for t in arr})
    ids = FiniteMap(obj, arr, {(l, x): (_map_atom(labels, identity_map(_by_label(labels, l))), x, x,
                                        tuple(a.identity(p) for p in x)) for (l, x) in obj})
    apex = pullback(src, tgt).apex
    comp = {}
    for g, f in apex:
        comp[(g, f)] = _total_compose(a, maps, labels, g, f)
    total = InternalCategory(obj, arr, src, tgt, ids, FiniteMap(apex, arr, comp), "total")
    proj = InternalFunctor(total, index_cat,
                           FiniteMap(obj, idx_obj, {o: o[0] for o in obj}),
                           FiniteMap(arr, idx_arr, {t: t[0] for t in arr}), "projection")
    return TotalCategory(a, family, labels, index_cat, maps, total, proj)


def _by_label(labels, l):
    for s, k in labels.items():
        if k == l:
            return s
    raise KeyError(l)


def _total_compose(a, maps, labels, g, f):
    """(v, g) ∘ (u, f) = (v∘u, u*g ∘ f)."""
    u, v = maps[f[0]], maps[g[0]]
    ug = pull(u, g[3])
    h = tuple(a.compose(p, q) for p, q in zip(ug, f[3]))
    return (_map_atom(labels, compose_map(u, v)), f[1], g[2], h)


def check_grothendieck(tc, connecting, limit=DEFAULT_WITNESS_LIMIT):
    r = CheckReport("grothendieck", limit)
    r.extend(check_category(tc.total, limit))
    r.extend(check_functor(tc.projection, limit, prefix="functor/projection"))
    total = tc.total
    by_tgt = {}
    for t in total.arr:
        by_tgt.setdefault(total.tgt(t), []).append(t)
    bad = []
    for u in connecting:
        uk = _map_atom(tc.labels, u)
        for y in fiber(tc.base_cat, u.cod).objects():
            lift = tc.lift(u, y)
            if lift not in total.arr:
                bad.append((uk, y, "missing"))
                continue
            top = (tc.labels[u.cod], y)
            for g in by_tgt.get(top, ()):
                w = tc.maps[g[0]]
                for vk, v in tc.maps.items():
                    if v.dom != w.dom or v.cod != u.dom or compose_map(v, u) != w:
                        continue
                    hits = [h for h in total.arrows_from(total.src(g))
                            if h[0] == vk and h[2] == lift[1] and total.compose(lift, h) == g]
                    if len(hits) != 1:
                        bad.append((uk, y, g, vk))
    r.record("grothendieck/cartesian", bad)
    return r


class MonoidalTotal:
    def __init__(self, v, tc):
        self.v = v
        self.tc = tc
        self._products = {}

    def _map_product(self, u, w):
        key = (u, w)
        if key not in self._products:
            self._products[key] = map_product(u, w)
        return self._products[key]

    def unit(self):
        return (terminal(), (self.v.I,))

    def tensor0(self, A, B):
        (X, x), (Y, y) = A, B
        P = product(X, Y).apex
        px, py = positions(X), positions(Y)
        return (P, tuple(self.v.t0(x[px[i]], y[py[j]]) for (i, j) in P))

    def tensor1(self, F, G):
        """(u, x, y, f) ⊗ (w, x', y', g) over u × w."""
        (u, x, y, f), (w, x2, y2, g) = F, G
        uw = self._map_product(u, w)
        X, Y = u.dom, w.dom
        px, py = positions(X), positions(Y)
        P = uw.dom
        src = tuple(self.v.t0(x[px[i]], x2[py[j]]) for (i, j) in P)
        Q = uw.cod
        qx, qy = positions(u.cod), positions(w.cod)
        tgt = tuple(self.v.t0(y[qx[i]], y2[qy[j]]) for (i, j) in Q)
        sec = tuple(self.v.t1(f[px[i]], g[py[j]]) for (i, j) in P)
        return (uw, src, tgt, sec)

    def lift(self, u, y):
        return (u, pull(u, y), y, tuple(self.v.ident(b) for b in pull(u, y)))


def monoidal_grothendieck(v, family, connecting):
    family = list(family)
    if terminal() not in family:
        raise FamilyNotProductClosed("the family must contain the terminal set for the unit")
    return MonoidalTotal(v, grothendieck(v.base, family, connecting))


def check_monoidal_grothendieck(mt, connecting, limit=DEFAULT_WITNESS_LIMIT):
    v, tc = mt.v, mt.tc
    r = check_grothendieck(tc, connecting, limit)
    r.subject = "monoidal grothendieck"
    objs = [(s, x) for s in tc.family for x in fiber(v.base, s).objects()]
    bad = [(fa, fb) for (sa, fa) in objs for (sb, fb) in objs
           if mt.tensor0((sa, fa), (sb, fb))[0] != product(sa, sb).apex]
    r.record("grothendieck/projection.strict", bad + ([] if mt.unit()[0] == terminal() else [("unit",)]))
    bad = []
    for u in connecting:
        for w in connecting:
            uw = mt._map_product(u, w)
            for y in fiber(v.base, u.cod).objects():
                for z in fiber(v.base, w.cod).objects():
                    _, yz = mt.tensor0((u.cod, y), (w.cod, z))
                    lhs = mt.tensor1(mt.lift(u, y), mt.lift(w, z))
                    rhs = mt.lift(uw, yz)
                    if lhs[1:] != rhs[1:] or lhs[0] != rhs[0]:
                        bad.append((_map_atom(tc.labels, u), _map_atom(tc.labels, w), y, z))
    r.record("grothendieck/tensor.lifts", bad)
    bad = []
    for s in tc.family:
        fm = fiber_monoidal(v, s)
        d = diagonal(s)
        fb = fm.base
        for a in fb.obj:
            for b in fb.obj:
                _, t = mt.tensor0((s, a), (s, b))
                if pull(d, t) != fm.t0(a, b):
                    bad.append((tc.labels[s], a, b))
        ids = identity_map(s)
        for f in fb.arr:
            for g in fb.arr:
                F = (ids, fb.src(f), fb.tgt(f), f)
                G = (ids, fb.src(g), fb.tgt(g), g)
                sec = mt.tensor1(F, G)[3]
                if pull(d, sec) != fm.t1(f, g):
                    bad.append((tc.labels[s], f, g))
    r.record("grothendieck/fiber.tensor", bad)
    return r


def standard_family():
    """∅, 1, 2, 1×1, 1×2, 2×2 with all product projections and diagonals."""
    empty = FiniteSet([], name="0")
    one = terminal()
    two = FiniteSet(["i", "j"], name="2")
    pairs = [(one, one, "1x1"), (one, two, "1x2"), (two, two, "2x2")]
    family = [empty, one, two]
    connecting = []
    for a, b, name in pairs:
        cone = product(a, b)
        p = FiniteSet(cone.apex.elems, name=name)
        family.append(p)
        connecting.append(FiniteMap(p, a, cone.legs[0].table))
        connecting.append(FiniteMap(p, b, cone.legs[1].table))
        if a == b:
            connecting.append(FiniteMap(a, p, diagonal(a).table))
    return family, connecting


# ---------------------------------------------------------------- small coincidence


def small_coincidence_check(x, limit=DEFAULT_WITNESS_LIMIT):
    """Re-read x as a small category over the externalized base and check its axioms.

    hom is an object of the fiber over X×X, comp an arrow of the fiber over X³,
    ident an arrow of the fiber over X; the axioms are equations of sections
    over X⁴ and X² obtained by reindexing along projections.
    """
    v = x.v
    X = x.carrier
    X2 = product(X, X).apex
    X3, X4 = power(X, 3), power(X, 4)
    hom = tuple(x.h(*p) for p in X2)
    comp = tuple(x.c(*t) for t in X3)
    ident = tuple(x.e(a) for a in X)

    def proj(dom, cod, idx):
        return FiniteMap(dom, cod, {t: (t[idx[0]], t[idx[1]]) if len(idx) == 2 else tuple(t[k] for k in idx)
                                    for t in dom})

    def ten0(s, t):
        return tuple(v.t0(p, q) for p, q in zip(s, t))

    def ten1(s, t):
        return tuple(v.t1(p, q) for p, q in zip(s, t))

    def cmp(*secs):
        out = []
        for parts in zip(*secs):
            try:
                out.append(v.comp(*parts))
            except IllTyped:
                out.append(None)
        return tuple(out)

    def ids(fam):
        return tuple(v.ident(a) for a in fam)

    p01, p12, p02 = (proj(X3, X2, k) for k in ((0, 1), (1, 2), (0, 2)))
    r = CheckReport(f"small({x.name})", limit)
    src_c = ten0(pull(p12, hom), pull(p01, hom))
    tgt_c = pull(p02, hom)
    ctyped = [v.src(f) == s and v.tgt(f) == t for f, s, t in zip(comp, src_c, tgt_c)]
    r.record("coincide/typing.comp", (t for t, ok in zip(X3, ctyped) if not ok))
    dX = diagonal(X)
    dhom = pull(FiniteMap(X, X2, dX.table), hom)
    ityped = [v.src(f) == v.I and v.tgt(f) == t for f, t in zip(ident, dhom)]
    r.record("coincide/typing.ident", ((a,) for a, ok in zip(X, ityped) if not ok))

    q = {k: proj(X4, X3, k) for k in ((0, 1, 3), (1, 2, 3), (0, 2, 3), (0, 1, 2))}
    r01, r12, r23 = (proj(X4, X2, k) for k in ((0, 1), (1, 2), (2, 3)))
    ct = dict(zip(X3, ctyped))
    ok4 = tuple(all(ct[q[k](t)] for k in q) for t in X4)
    h01, h12, h23 = pull(r01, hom), pull(r12, hom), pull(r23, hom)
    alpha = tuple(v.alpha(a, b, c) for a, b, c in zip(h23, h12, h01))
    lhs = cmp(pull(q[(0, 1, 3)], comp), ten1(pull(q[(1, 2, 3)], comp), ids(h01)))
    rhs = cmp(pull(q[(0, 2, 3)], comp), ten1(ids(h23), pull(q[(0, 1, 2)], comp)), alpha)
    r.record("coincide/assoc", (t for t, ok, a, b in zip(X4, ok4, lhs, rhs) if ok and a != b))

    d1 = FiniteMap(X2, X3, {(a, b): (a, b, b) for (a, b) in X2})
    d0 = FiniteMap(X2, X3, {(a, b): (a, a, b) for (a, b) in X2})
    s1 = FiniteMap(X2, X, {(a, b): b for (a, b) in X2})
    s0 = FiniteMap(X2, X, {(a, b): a for (a, b) in X2})
    it = dict(zip(X, ityped))
    lhs = cmp(pull(d1, comp), ten1(pull(s1, ident), ids(hom)))
    lam = tuple(v.lam(h) for h in hom)
    r.record("coincide/left_unit", (p for p, a, b in zip(X2, lhs, lam)
                                    if ct[d1(p)] and it[s1(p)] and a != b))
    lhs = cmp(pull(d0, comp), ten1(ids(hom), pull(s0, ident)))
    rho = tuple(v.rho(h) for h in hom)
    r.record("coincide/right_unit", (p for p, a, b in zip(X2, lhs, rho)
                                     if ct[d0(p)] and it[s0(p)] and a != b))
    return r


COINCIDENCE = {
    "coincide/typing.comp": "enriched/typing.comp",
    "coincide/typing.ident": "enriched/typing.ident",
    "coincide/assoc": "enriched/assoc",
    "coincide/left_unit": "enriched/left_unit",
    "coincide/right_unit": "enriched/right_unit",
}


# ---------------------------------------------------------------- enriched fibers


def enriched_fiber(x, i):
    v = fiber_monoidal(x.v, i)
    objs = list(_cartesian(x.carrier.elems, repeat=len(i)))
    hom = {(s, t): tuple(x.h(p, q) for p, q in zip(s, t)) for s in objs for t in objs}
    comp = {(s, t, u): tuple(x.c(p, q, w) for p, q, w in zip(s, t, u))
            for s in objs for t in objs for u in objs}
    ident = {s: tuple(x.e(p) for p in s) for s in objs}
    return make_enriched(v, objs, hom, comp, ident, f"{x.name}[{i.name}]")


def enriched_reindex(x, u):
    """u*: ⟦X⟧[I] → ⟦X⟧[I'] with identity hom-components, as a functor out of the
    base-changed fiber."""
    mf = reindex_monoidal_functor(x.v, u)
    dom = change_enriching_base(mf, enriched_fiber(x, u.cod))
    cod = enriched_fiber(x, u.dom)
    W = cod.v
    f0 = {s: pull(u, s) for s in dom.carrier}
    f1 = {(s, t): W.ident(dom.h(s, t)) for (s, t) in dom.hom.dom}
    return make_enriched_functor(dom, cod, f0, f1, "reindex")


class FiberFunctorData:
    """An enriched functor between fibers at one index, given lazily."""

    def __init__(self, index, f0, f1):
        self.index = index
        self.f0 = f0
        self.f1 = f1


def externalize_functor(fn, index):
    def f0(s):
        return tuple(fn.F0(p) for p in s)

    def f1(s, t):
        return tuple(fn.F1(p, q) for p, q in zip(s, t))
    return FiberFunctorData(index, f0, f1)


def _enriched_inverse(y, a, b, phi):
    """ψ: I → Hom(b, a) inverse to φ: I → Hom(a, b) under enriched composition."""
    v = y.v
    linv = v.inv(v.lam(v.I))
    for psi in v.base.hom(v.I, y.h(b, a)):
        try:
            one = v.comp(y.c(a, b, a), v.t1(psi, phi), linv)
            two = v.comp(y.c(b, a, b), v.t1(phi, psi), linv)
        except IllTyped:
            continue
        if one == y.e(a) and two == y.e(b):
            return psi
    return None


def bar_functor(x, y, at_x, at_xx, phi=None):
    """Recover X → Y from fiber data at X and X×X.

    phi, when given, is a pair of sections over X×X with phi[k](x0,x1): I → Hom_Y(G_k, F̄0 x_k)
    where G_k is the fiber functor's value at the k-th projection.
    """
    v = x.v
    X = x.carrier
    X2 = product(X, X).apex
    ident_family = tuple(X.elems)
    fbar0 = dict(zip(X.elems, at_x.f0(ident_family)))
    pi = (tuple(p[0] for p in X2), tuple(p[1] for p in X2))
    got = [at_xx.f0(pi[0]), at_xx.f0(pi[1])]
    want = [tuple(fbar0[p[k]] for p in X2) for k in (0, 1)]
    phis = []
    for k in (0, 1):
        if phi is None or phi[k] is None:
            if got[k] != want[k]:
                raise IncoherentFiberData(f"projection {k + 1} disagrees with the readoff and no φ was given")
            phis.append(tuple(y.e(b) for b in got[k]))
            continue
        sec = tuple(phi[k])
        for p, f, a, b in zip(X2, sec, got[k], want[k]):
            if not v.has_arrow(f, v.I, y.h(a, b)) or _enriched_inverse(y, a, b, f) is None:
                raise IncoherentFiberData(f"φ{k + 1} is not an isomorphism at {p}")
        phis.append(sec)
    raw = at_xx.f1(pi[0], pi[1])
    f1 = {}
    for n, p in enumerate(X2):
        a, b, a2, b2 = got[0][n], got[1][n], want[0][n], want[1][n]
        psi1 = _enriched_inverse(y, a, a2, phis[0][n])
        hab = y.h(a, b)
        step1 = v.comp(y.c(a2, a, b), v.t1(v.ident(hab), psi1), v.inv(v.rho(hab)))
        ha2b = y.h(a2, b)
        step2 = v.comp(y.c(a2, b, b2), v.t1(phis[1][n], v.ident(ha2b)), v.inv(v.lam(ha2b)))
        try:
            f1[p] = v.comp(step2, step1, raw[n])
        except IllTyped:
            raise IncoherentFiberData(f"fiber hom-component is mistyped at {p}") from None
    return make_enriched_functor(x, y, fbar0, f1, "bar")


def underlying_commute_check(x, i, limit=DEFAULT_WITNESS_LIMIT):
    """U(⟦X⟧[I]) ≅ ⟦U(X)⟧[I] via (s, t, f) ↦ ((s_k, t_k, f_k))_k."""
    left = underlying_category(enriched_fiber(x, i))
    right = fiber(underlying_category(x), i).category()
    r = CheckReport(f"U/fiber square at {i.name or len(i)}", limit)
    r.record("underlying/objects", [] if left.obj == right.obj else [("objects",)])

    def iso(t):
        s, u, f = t
        return tuple(zip(s, u, f))
    image = {iso(t) for t in left.arr}
    missing = [(a,) for a in right.arr if a not in image]
    r.record("underlying/arrows", missing + [(t,) for t in left.arr if iso(t) not in right.arr])
    bad = [(t,) for t in left.arr if iso(t) in right.arr and (
        right.src(iso(t)) != left.src(t) or right.tgt(iso(t)) != left.tgt(t))]
    bad += [(a,) for a in left.obj if a in right.obj and iso(left.identity(a)) != right.identity(a)]
    bad += [(g, f) for (g, f), h in left.comp.items()
            if right.try_compose(iso(g), iso(f)) != iso(h)]
    r.record("underlying/structure", bad)
    return r
