"""Finite sets and functions, with chosen finite limits."""

from functools import lru_cache
from itertools import product as _cartesian

STAR = "⋆"


class AmbientError(Exception):
    pass


class DomainMismatch(AmbientError):
    pass


class NotACone(AmbientError):
    pass


@lru_cache(maxsize=1 << 20)
def is_atom(a):
    if isinstance(a, str):
        return True
    return isinstance(a, tuple) and all(is_atom(x) for x in a)


@lru_cache(maxsize=1 << 20)
def akey(a):
    """Canonical sort key for atoms: strings before tuples, tuples componentwise."""
    if isinstance(a, str):
        return (0, a)
    return (1, tuple(akey(x) for x in a))


def fmt_atom(a):
    if isinstance(a, str):
        return a
    return "⟨" + ",".join(fmt_atom(x) for x in a) + "⟩"


def sort_atoms(xs):
    return sorted(xs, key=akey)


class FiniteSet:
    __slots__ = ("name", "elems", "_members")

    def __init__(self, elems=(), name=""):
        elems = list(elems)
        for e in elems:
            if not is_atom(e):
                raise TypeError(f"not an atom: {e!r}")
        members = frozenset(elems)
        if len(members) != len(elems):
            raise ValueError("duplicate elements")
        self.elems = tuple(sort_atoms(members))
        self._members = members
        self.name = name

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        return isinstance(other, FiniteSet) and self.elems == other.elems

    def __hash__(self):
        return hash(self.elems)

    def __repr__(self):
        body = " ".join(fmt_atom(e) for e in self.elems)
        return f"FiniteSet({self.name or '_'}: {body})"

    def index(self, x):
        return self.elems.index(x)

    def encode(self):
        return ("set", self.elems)


class FiniteMap:
    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom, cod, table):
        table = dict(table)
        if set(table) != set(dom.elems):
            missing = [x for x in dom if x not in table]
            extra = [x for x in table if x not in dom]
            raise DomainMismatch(f"table not total on domain (missing {missing[:3]}, extra {extra[:3]})")
        for x, y in table.items():
            if y not in cod:
                raise DomainMismatch(f"value {fmt_atom(y)} of {fmt_atom(x)} outside codomain")
        self.dom = dom
        self.cod = cod
        self.table = table

    def __call__(self, x):
        return self.table[x]

    def items(self):
        return [(x, self.table[x]) for x in self.dom]

    def __eq__(self, other):
        return (isinstance(other, FiniteMap) and self.dom == other.dom
                and self.cod == other.cod and self.table == other.table)

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(self.items())))

    def __repr__(self):
        return f"FiniteMap({len(self.dom)} -> {len(self.cod)})"

    def encode(self):
        return ("map", self.dom.encode(), self.cod.encode(), tuple(self.items()))


def identity_map(s):
    return FiniteMap(s, s, {x: x for x in s})


def constant_map(s, t, y):
    return FiniteMap(s, t, {x: y for x in s})


def compose_map(f, g):
    """g after f."""
    if f.cod != g.dom:
        raise DomainMismatch("codomain of first map differs from domain of second")
    return FiniteMap(f.dom, g.cod, {x: g.table[f.table[x]] for x in f.dom})


def all_maps(s, t):
    for values in _cartesian(t.elems, repeat=len(s)):
        yield FiniteMap(s, t, zip(s.elems, values))


def power(s, n, name=""):
    """n-fold product with flat tuple atoms."""
    return FiniteSet(_cartesian(s.elems, repeat=n), name=name)


class LimitCone:
    """A chosen limit: apex, legs, and the mediating-map construction."""

    def __init__(self, apex, legs, diagram, kind):
        self.apex = apex
        self.legs = tuple(legs)
        self.diagram = diagram
        self.kind = kind

    def mediate(self, *maps):
        if len(maps) != len(self.legs):
            raise NotACone("wrong number of cone legs")
        dom = maps[0].dom
        for m, leg in zip(maps, self.legs):
            if m.dom != dom or m.cod != leg.cod:
                raise DomainMismatch("cone leg has wrong endpoints")
        if self.kind == "product":
            a, b = maps
            return FiniteMap(dom, self.apex, {x: (a(x), b(x)) for x in dom})
        if self.kind == "pullback":
            f, g = self.diagram
            a, b = maps
            for x in dom:
                if f(a(x)) != g(b(x)):
                    raise NotACone(f"square does not commute at {fmt_atom(x)}")
            return FiniteMap(dom, self.apex, {x: (a(x), b(x)) for x in dom})
        if self.kind == "equalizer":
            f, g = self.diagram
            (h,) = maps
            for x in dom:
                if f(h(x)) != g(h(x)):
                    raise NotACone(f"map does not equalize at {fmt_atom(x)}")
            return FiniteMap(dom, self.apex, {x: h(x) for x in dom})
        if self.kind == "terminal":
            return bang(dom)
        raise NotACone(self.kind)


def product(a, b):
    apex = FiniteSet(((x, y) for x in a for y in b), name=f"{a.name}×{b.name}")
    p1 = FiniteMap(apex, a, {p: p[0] for p in apex})
    p2 = FiniteMap(apex, b, {p: p[1] for p in apex})
    return LimitCone(apex, (p1, p2), (a, b), "product")


def pullback(f, g):
    if f.cod != g.cod:
        raise DomainMismatch("pullback of maps with different codomains")
    fibres = {}
    for y in g.dom:
        fibres.setdefault(g.table[y], []).append(y)
    apex = FiniteSet((x, y) for x in f.dom for y in fibres.get(f.table[x], ()))
    p1 = FiniteMap(apex, f.dom, {p: p[0] for p in apex})
    p2 = FiniteMap(apex, g.dom, {p: p[1] for p in apex})
    return LimitCone(apex, (p1, p2), (f, g), "pullback")


def equalizer(f, g):
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("equalizer of non-parallel maps")
    apex = FiniteSet(x for x in f.dom if f(x) == g(x))
    inc = FiniteMap(apex, f.dom, {x: x for x in apex})
    return LimitCone(apex, (inc,), (f, g), "equalizer")


def terminal():
    return FiniteSet([STAR], name="1")


def bang(s):
    return FiniteMap(s, terminal(), {x: STAR for x in s})


def map_product(f, g):
    """f × g between chosen products."""
    dom = product(f.dom, g.dom).apex
    cod = product(f.cod, g.cod).apex
    return FiniteMap(dom, cod, {(x, y): (f(x), g(y)) for (x, y) in dom})


def diagonal(s):
    return FiniteMap(s, product(s, s).apex, {x: (x, x) for x in s})
