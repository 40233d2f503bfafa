"""Categories, functors and natural transformations internal to finite sets.

Composition convention: comp is keyed by (g, f) with tgt(f) = src(g) and
comp(g, f) is "g after f".
"""

from collections import defaultdict

from .ambient import (
    FiniteMap, FiniteSet, STAR, fmt_atom, identity_map, product, pullback,
)
from .report import CheckReport, DEFAULT_WITNESS_LIMIT


class MalformedData(Exception):
    pass


class EndpointMismatch(Exception):
    pass


class InternalCategory:
    __slots__ = ("obj", "arr", "src", "tgt", "ids", "comp", "name", "_out", "_in", "_enc", "_hash")

    def __init__(self, obj, arr, src, tgt, ids, comp, name=""):
        for m, d, c, label in ((src, arr, obj, "src"), (tgt, arr, obj, "tgt"), (ids, obj, arr, "ids")):
            if m.dom != d or m.cod != c:
                raise MalformedData(f"{label} has wrong endpoints")
        if comp.cod != arr:
            raise MalformedData("comp does not land in the arrows")
        self.obj, self.arr = obj, arr
        self.src, self.tgt, self.ids, self.comp = src, tgt, ids, comp
        self.name = name
        self._out = None
        self._in = None
        self._enc = None
        self._hash = None

    def composable(self):
        return pullback(self.src, self.tgt).apex

    def compose(self, g, f):
        return self.comp.table[(g, f)]

    def try_compose(self, g, f):
        return self.comp.table.get((g, f))

    def identity(self, a):
        return self.ids.table[a]

    def arrows_from(self, a):
        if self._out is None:
            out = defaultdict(list)
            for f in self.arr:
                out[self.src(f)].append(f)
            self._out = out
        return self._out.get(a, [])

    def arrows_to(self, a):
        if self._in is None:
            inc = defaultdict(list)
            for f in self.arr:
                inc[self.tgt(f)].append(f)
            self._in = inc
        return self._in.get(a, [])

    def hom(self, a, b):
        return [f for f in self.arrows_from(a) if self.tgt(f) == b]

    def __eq__(self, other):
        return self is other or (isinstance(other, InternalCategory) and self.encode() == other.encode())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.encode())
        return self._hash

    def encode(self):
        if self._enc is None:
            self._enc = ("cat",) + tuple(
                x.encode() for x in (self.obj, self.arr, self.src, self.tgt, self.ids, self.comp))
        return self._enc

    def __repr__(self):
        return f"InternalCategory({self.name or '_'}: {len(self.obj)} obj, {len(self.arr)} arr)"


def make_category(objects, arrows, ids, comp, name=""):
    """Build from plain tables: arrows maps atom -> (src, tgt)."""
    obj = FiniteSet(objects, name=f"{name}0")
    arr = FiniteSet(arrows, name=f"{name}1")
    src = FiniteMap(arr, obj, {f: st[0] for f, st in arrows.items()})
    tgt = FiniteMap(arr, obj, {f: st[1] for f, st in arrows.items()})
    idm = FiniteMap(obj, arr, ids)
    apex = pullback(src, tgt).apex
    missing = [p for p in apex if p not in comp]
    extra = [p for p in comp if p not in apex]
    if missing or extra:
        bad = (missing or extra)[0]
        what = "missing" if missing else "non-composable"
        raise MalformedData(f"comp table {what} entry {fmt_atom(bad[0])} {fmt_atom(bad[1])}")
    return InternalCategory(obj, arr, src, tgt, idm, FiniteMap(apex, arr, comp), name)


def check_category(c, limit=DEFAULT_WITNESS_LIMIT):
    if c.comp.dom != c.composable():
        raise MalformedData("comp is not defined on the pullback of src and tgt")
    r = CheckReport(c.name or "category", limit)
    src, tgt, ids = c.src.table, c.tgt.table, c.ids.table
    bad_ids = {a for a in c.obj if src[ids[a]] != a or tgt[ids[a]] != a}
    bad_comp = {(g, f) for (g, f), h in c.comp.items() if src[h] != src[f] or tgt[h] != tgt[g]}
    r.record("category/ids.typing", ((a,) for a in bad_ids))
    r.record("category/comp.typing", bad_comp)
    # instances touching a mistyped entry are reported under typing only
    left, right = [], []
    for f in c.arr:
        a, b = src[f], tgt[f]
        if b not in bad_ids and (ids[b], f) not in bad_comp and c.compose(ids[b], f) != f:
            left.append((f,))
        if a not in bad_ids and (f, ids[a]) not in bad_comp and c.compose(f, ids[a]) != f:
            right.append((f,))
    r.record("category/left_unit", left)
    r.record("category/right_unit", right)
    bad = []
    for (g, f), gf in c.comp.items():
        if (g, f) in bad_comp:
            continue
        for h in c.arrows_from(tgt[g]):
            if (h, g) in bad_comp:
                continue
            hg = c.compose(h, g)
            if (hg, f) in bad_comp or (h, gf) in bad_comp:
                continue
            if c.compose(hg, f) != c.compose(h, gf):
                bad.append((h, g, f))
    r.record("category/assoc", bad)
    return r


class InternalFunctor:
    __slots__ = ("dom", "cod", "f0", "f1", "name")

    def __init__(self, dom, cod, f0, f1, name=""):
        if f0.dom != dom.obj or f0.cod != cod.obj or f1.dom != dom.arr or f1.cod != cod.arr:
            raise MalformedData("functor components do not match the categories' carriers")
        self.dom, self.cod, self.f0, self.f1, self.name = dom, cod, f0, f1, name

    def encode(self):
        return ("functor", self.dom.encode(), self.cod.encode(), self.f0.encode(), self.f1.encode())

    def __eq__(self, other):
        return isinstance(other, InternalFunctor) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        return f"InternalFunctor({self.name or '_'})"


def make_functor(dom, cod, f0, f1, name=""):
    return InternalFunctor(dom, cod, FiniteMap(dom.obj, cod.obj, f0), FiniteMap(dom.arr, cod.arr, f1), name)


def check_functor(fn, limit=DEFAULT_WITNESS_LIMIT, prefix="functor"):
    a, b = fn.dom, fn.cod
    f0, f1 = fn.f0.table, fn.f1.table
    r = CheckReport(fn.name or "functor", limit)
    r.record(f"{prefix}/src", ((f,) for f in a.arr if b.src(f1[f]) != f0[a.src(f)]))
    r.record(f"{prefix}/tgt", ((f,) for f in a.arr if b.tgt(f1[f]) != f0[a.tgt(f)]))
    r.record(f"{prefix}/ids", ((x,) for x in a.obj if f1[a.identity(x)] != b.identity(f0[x])))
    bad = []
    for (g, f), gf in a.comp.items():
        img = b.try_compose(f1[g], f1[f])
        if img is not None and img != f1[gf]:
            bad.append((g, f))
    r.record(f"{prefix}/comp", bad)
    return r


def identity_functor(c):
    return InternalFunctor(c, c, identity_map(c.obj), identity_map(c.arr), f"id({c.name})")


def compose_functors(f, g):
    """g after f."""
    if f.cod != g.dom:
        raise EndpointMismatch("functors are not composable")
    f0 = FiniteMap(f.dom.obj, g.cod.obj, {x: g.f0(f.f0(x)) for x in f.dom.obj})
    f1 = FiniteMap(f.dom.arr, g.cod.arr, {x: g.f1(f.f1(x)) for x in f.dom.arr})
    return InternalFunctor(f.dom, g.cod, f0, f1, f"{g.name}∘{f.name}")


class InternalNat:
    __slots__ = ("src_f", "tgt_f", "component", "name")

    def __init__(self, src_f, tgt_f, component, name=""):
        if src_f.dom != tgt_f.dom or src_f.cod != tgt_f.cod:
            raise EndpointMismatch("natural transformation between non-parallel functors")
        if component.dom != src_f.dom.obj or component.cod != src_f.cod.arr:
            raise MalformedData("component map has wrong endpoints")
        self.src_f, self.tgt_f, self.component, self.name = src_f, tgt_f, component, name

    def __call__(self, a):
        return self.component.table[a]

    def encode(self):
        return ("nat", self.src_f.encode(), self.tgt_f.encode(), self.component.encode())

    def __eq__(self, other):
        return isinstance(other, InternalNat) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())


def make_nat(src_f, tgt_f, component, name=""):
    return InternalNat(src_f, tgt_f, FiniteMap(src_f.dom.obj, src_f.cod.arr, component), name)


def check_nat(n, limit=DEFAULT_WITNESS_LIMIT, prefix="nat"):
    F, G = n.src_f, n.tgt_f
    a, b = F.dom, F.cod
    r = CheckReport(n.name or "nat", limit)
    r.record(f"{prefix}/typing", (
        (x,) for x in a.obj if b.src(n(x)) != F.f0(x) or b.tgt(n(x)) != G.f0(x)))
    bad = []
    for f in a.arr:
        lhs = b.try_compose(G.f1(f), n(a.src(f)))
        rhs = b.try_compose(n(a.tgt(f)), F.f1(f))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append((f,))
    r.record(f"{prefix}/naturality", bad)
    return r


def identity_nat(fn):
    comp = {x: fn.cod.identity(fn.f0(x)) for x in fn.dom.obj}
    return make_nat(fn, fn, comp, f"id({fn.name})")


def vcompose_nats(a, b):
    """b after a: (b·a)(x) = b(x) ∘ a(x)."""
    if a.tgt_f != b.src_f:
        raise EndpointMismatch("natural transformations are not vertically composable")
    cod = a.src_f.cod
    comp = {x: cod.compose(b(x), a(x)) for x in a.src_f.dom.obj}
    return make_nat(a.src_f, b.tgt_f, comp)


def hwhisker(n, f, side):
    """side='pre': n∘f (f: A→B, n between functors out of B);
    side='post': f∘n (n between functors into the domain of f)."""
    if side == "pre":
        if f.cod != n.src_f.dom:
            raise EndpointMismatch("whiskering functor does not land in the domain")
        comp = {x: n(f.f0(x)) for x in f.dom.obj}
        return make_nat(compose_functors(f, n.src_f), compose_functors(f, n.tgt_f), comp)
    if side == "post":
        if n.src_f.cod != f.dom:
            raise EndpointMismatch("whiskering functor does not start at the codomain")
        comp = {x: f.f1(n(x)) for x in n.src_f.dom.obj}
        return make_nat(compose_functors(n.src_f, f), compose_functors(n.tgt_f, f), comp)
    raise ValueError(f"side must be 'pre' or 'post', got {side!r}")


def hcompose_nats(a, b):
    """Horizontal composite b∗a for a: F⇒G: A→B and b: H⇒K: B→C."""
    if a.src_f.cod != b.src_f.dom:
        raise EndpointMismatch("natural transformations are not horizontally composable")
    return vcompose_nats(hwhisker(b, a.src_f, "pre"), hwhisker(a, b.tgt_f, "post"))


def product_cat(a, b, name=""):
    obj = product(a.obj, b.obj).apex
    arr = product(a.arr, b.arr).apex
    src = FiniteMap(arr, obj, {(f, g): (a.src(f), b.src(g)) for (f, g) in arr})
    tgt = FiniteMap(arr, obj, {(f, g): (a.tgt(f), b.tgt(g)) for (f, g) in arr})
    ids = FiniteMap(obj, arr, {(x, y): (a.identity(x), b.identity(y)) for (x, y) in obj})
    comp = {}
    for (g1, f1), h1 in a.comp.items():
        for (g2, f2), h2 in b.comp.items():
            comp[((g1, g2), (f1, f2))] = (h1, h2)
    apex = pullback(src, tgt).apex
    return InternalCategory(obj, arr, src, tgt, ids, FiniteMap(apex, arr, comp), name or f"{a.name}×{b.name}")


def terminal_cat():
    return make_category([STAR], {STAR: (STAR, STAR)}, {STAR: STAR}, {(STAR, STAR): STAR}, "1")


def discrete(s):
    return make_category(s.elems, {x: (x, x) for x in s}, {x: x for x in s},
                         {(x, x): x for x in s}, f"Dis({s.name})")


def indiscrete(s):
    arrows = {(x, y): (x, y) for x in s for y in s}
    comp = {((y, z), (x, y)): (x, z) for x in s for y in s for z in s}
    return make_category(s.elems, arrows, {x: (x, x) for x in s}, comp, f"Ind({s.name})")


def opposite(c):
    apex = pullback(c.tgt, c.src).apex
    comp = FiniteMap(apex, c.arr, {(f, g): c.compose(g, f) for (f, g) in apex})
    return InternalCategory(c.obj, c.arr, c.tgt, c.src, c.ids, comp, f"{c.name}^op")


def delooping(elements, mult, unit, name=""):
    """One-object category of a monoid; mult(g, f) is "g after f"."""
    return make_category([STAR], {m: (STAR, STAR) for m in elements}, {STAR: unit},
                         {(g, f): mult(g, f) for g in elements for f in elements}, name)


def inverse_of(c, f):
    """Two-sided inverse of f found by search, or None."""
    for g in c.hom(c.tgt(f), c.src(f)):
        if c.compose(g, f) == c.identity(c.src(f)) and c.compose(f, g) == c.identity(c.tgt(f)):
            return g
    return None
