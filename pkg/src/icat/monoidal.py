"""Monoidal structures on internal categories, monoidal functors and transformations."""

from itertools import product as _cartesian

from .ambient import FiniteMap, STAR, fmt_atom, power
from .internal_cat import (
    EndpointMismatch, InternalFunctor, MalformedData, check_functor, check_nat,
    compose_functors, identity_functor, inverse_of, make_functor, product_cat, terminal_cat,
)
from .report import CheckReport, DEFAULT_WITNESS_LIMIT, fmt_witness


class IllTyped(Exception):
    pass


class MonoidalStructure:
    """Tensor V×V→V, unit, and associator/unitor component tables.

    assoc(a,b,c): (a⊗b)⊗c → a⊗(b⊗c); lunit(a): I⊗a → a; runit(a): a⊗I → a.
    """

    def __init__(self, base, tensor, unit_obj, unit_functor, assoc, lunit, runit, name=""):
        self.base = base
        self.tensor = tensor
        self.unit_obj = unit_obj
        self.unit_functor = unit_functor
        self.assoc = assoc
        self.lunit = lunit
        self.runit = runit
        self.name = name
        self._inv = {}
        self._enc = None
        self._hash = None

    @property
    def I(self):
        return self.unit_obj

    def t0(self, a, b):
        return self.tensor.f0.table[(a, b)]

    def t1(self, f, g):
        return self.tensor.f1.table[(f, g)]

    def src(self, f):
        return self.base.src.table[f]

    def tgt(self, f):
        return self.base.tgt.table[f]

    def ident(self, a):
        return self.base.ids.table[a]

    def comp(self, *fs):
        """fs[0] after fs[1] after ...; raises IllTyped when not composable."""
        acc = fs[-1]
        for g in reversed(fs[:-1]):
            h = self.base.comp.table.get((g, acc))
            if h is None:
                raise IllTyped((g, acc))
            acc = h
        return acc

    def alpha(self, a, b, c):
        return self.assoc.table[(a, b, c)]

    def lam(self, a):
        return self.lunit.table[a]

    def rho(self, a):
        return self.runit.table[a]

    def inv(self, f):
        if f not in self._inv:
            g = inverse_of(self.base, f)
            if g is None:
                raise IllTyped(("not invertible", f))
            self._inv[f] = g
        return self._inv[f]

    def has_arrow(self, f, a, b):
        return self.src(f) == a and self.tgt(f) == b

    def fold0(self, vs):
        """Left-nested tensor of a list of objects; empty list gives I."""
        if not vs:
            return self.unit_obj
        acc = vs[0]
        for v in vs[1:]:
            acc = self.t0(acc, v)
        return acc

    def fold1(self, fs):
        if not fs:
            return self.ident(self.unit_obj)
        acc = fs[0]
        for f in fs[1:]:
            acc = self.t1(acc, f)
        return acc

    def encode(self):
        if self._enc is None:
            self._enc = ("monoidal", self.base.encode(), self.tensor.encode(), self.unit_obj,
                         self.unit_functor.encode(), self.assoc.encode(), self.lunit.encode(),
                         self.runit.encode())
        return self._enc

    def __eq__(self, other):
        return self is other or (isinstance(other, MonoidalStructure) and self.encode() == other.encode())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.encode())
        return self._hash

    def __repr__(self):
        return f"MonoidalStructure({self.name or '_'})"


def unit_functor_for(base, unit_obj):
    one = terminal_cat()
    return make_functor(one, base, {STAR: unit_obj}, {STAR: base.identity(unit_obj)})


def make_monoidal(base, t0, t1, unit_obj, assoc, lunit, runit, name="", unit_functor=None):
    vv = product_cat(base, base)
    tensor = make_functor(vv, base, t0, t1, f"⊗({name})")
    if unit_functor is None:
        unit_functor = unit_functor_for(base, unit_obj)
    return MonoidalStructure(
        base, tensor, unit_obj, unit_functor,
        FiniteMap(power(base.obj, 3), base.arr, assoc),
        FiniteMap(base.obj, base.arr, lunit),
        FiniteMap(base.obj, base.arr, runit),
        name,
    )


def strict_coherence(base, t0, unit_obj):
    """Identity associator and unitors for a tensor given on objects."""
    objs = base.obj.elems
    assoc = {(a, b, c): base.identity(t0[(t0[(a, b)], c)]) for a in objs for b in objs for c in objs}
    lunit = {a: base.identity(a) for a in objs}
    runit = {a: base.identity(a) for a in objs}
    return assoc, lunit, runit


def _safe(fn):
    try:
        return fn()
    except IllTyped:
        return None


def _check_iso_family(v, r, label, items):
    bad, found = [], []
    for key, f in items:
        g = inverse_of(v.base, f)
        if g is None:
            bad.append(key)
        else:
            found.append(f"{fmt_witness(key)}: {fmt_atom(f)} has inverse {fmt_atom(g)}")
    r.record(f"iso/{label}", bad, notes=found)


def check_monoidal(v, limit=DEFAULT_WITNESS_LIMIT):
    base = v.base
    if v.tensor.dom != product_cat(base, base) or v.tensor.cod != base:
        raise MalformedData("tensor is not a functor V×V→V")
    if v.unit_functor.dom != terminal_cat() or v.unit_functor.cod != base:
        raise MalformedData("unit is not a functor 1→V")
    if v.unit_obj not in base.obj:
        raise MalformedData("unit object is not an object of V")
    if v.assoc.dom != power(base.obj, 3) or v.lunit.dom != base.obj or v.runit.dom != base.obj:
        raise MalformedData("coherence tables have wrong domains")
    r = CheckReport(v.name or "monoidal", limit)
    I = v.unit_obj
    r.record("monoidal/unit.consistency", [(STAR,)] if (
        v.unit_functor.f0(STAR) != I or v.unit_functor.f1(STAR) != base.identity(I)) else [])
    r.extend(check_functor(v.tensor, limit, prefix="functor/tensor"))
    r.extend(check_functor(v.unit_functor, limit, prefix="functor/unit"))
    objs = base.obj.elems
    arrs = base.arr.elems
    S, T = base.src.table, base.tgt.table

    # associator
    typed = {}
    bad = []
    for a, b, c in _cartesian(objs, repeat=3):
        f = v.alpha(a, b, c)
        if v.has_arrow(f, v.t0(v.t0(a, b), c), v.t0(a, v.t0(b, c))):
            typed[(a, b, c)] = f
        else:
            bad.append((a, b, c))
    r.record("nat/assoc/typing", bad)
    bad = []
    for f, g, h in _cartesian(arrs, repeat=3):
        s, t = (S[f], S[g], S[h]), (T[f], T[g], T[h])
        if s not in typed or t not in typed:
            continue
        lhs = _safe(lambda: v.comp(typed[t], v.t1(v.t1(f, g), h)))
        rhs = _safe(lambda: v.comp(v.t1(f, v.t1(g, h)), typed[s]))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append((f, g, h))
    r.record("nat/assoc/naturality", bad)
    _check_iso_family(v, r, "assoc", typed.items())

    for label, get, side in (("lunit", v.lam, "l"), ("runit", v.rho, "r")):
        typed_u, bad = {}, []
        for a in objs:
            f = get(a)
            s = v.t0(I, a) if side == "l" else v.t0(a, I)
            if v.has_arrow(f, s, a):
                typed_u[a] = f
            else:
                bad.append((a,))
        r.record(f"nat/{label}/typing", bad)
        bad = []
        idI = base.identity(I)
        for f in arrs:
            if S[f] not in typed_u or T[f] not in typed_u:
                continue
            whisk = v.t1(idI, f) if side == "l" else v.t1(f, idI)
            lhs = _safe(lambda: v.comp(f, typed_u[S[f]]))
            rhs = _safe(lambda: v.comp(typed_u[T[f]], whisk))
            if lhs is not None and rhs is not None and lhs != rhs:
                bad.append((f,))
        r.record(f"nat/{label}/naturality", bad)
        _check_iso_family(v, r, label, [((a,), f) for a, f in typed_u.items()])

    bad = []
    for a, b in _cartesian(objs, repeat=2):
        lhs = _safe(lambda: v.comp(v.t1(base.identity(a), v.lam(b)), v.alpha(a, I, b)))
        rhs = _safe(lambda: v.t1(v.rho(a), base.identity(b)))
        if lhs is None or rhs is None:
            continue
        if lhs != rhs:
            bad.append((a, b))
    r.record("monoidal/triangle", bad)
    bad = []
    for a, b, c, d in _cartesian(objs, repeat=4):
        lhs = _safe(lambda: v.comp(
            v.t1(base.identity(a), v.alpha(b, c, d)),
            v.alpha(a, v.t0(b, c), d),
            v.t1(v.alpha(a, b, c), base.identity(d))))
        rhs = _safe(lambda: v.comp(v.alpha(a, b, v.t0(c, d)), v.alpha(v.t0(a, b), c, d)))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append((a, b, c, d))
    r.record("monoidal/pentagon", bad)
    return r


def is_strict(v):
    base = v.base
    return (all(f == base.identity(base.src(f)) for f in v.assoc.table.values())
            and all(f == base.identity(base.src(f)) for f in v.lunit.table.values())
            and all(f == base.identity(base.src(f)) for f in v.runit.table.values()))


class MonoidalFunctorData:
    """F: V→W with ε: I_W → F(I_V) and μ(a,b): Fa ⊗ Fb → F(a⊗b)."""

    def __init__(self, dom, cod, f, eps, mu, name=""):
        if f.dom != dom.base or f.cod != cod.base:
            raise EndpointMismatch("functor does not run between the monoidal bases")
        self.dom, self.cod, self.f, self.eps, self.mu, self.name = dom, cod, f, eps, mu, name

    def F0(self, a):
        return self.f.f0.table[a]

    def F1(self, f):
        return self.f.f1.table[f]

    def m(self, a, b):
        return self.mu.table[(a, b)]

    def encode(self):
        return ("mfunctor", self.dom.encode(), self.cod.encode(), self.f.encode(), self.eps, self.mu.encode())

    def __eq__(self, other):
        return isinstance(other, MonoidalFunctorData) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())


def make_monoidal_functor(dom, cod, f, eps, mu, name=""):
    return MonoidalFunctorData(dom, cod, f, eps, FiniteMap(power(dom.base.obj, 2), cod.base.arr, mu), name)


def identity_monoidal_functor(v):
    mu = {(a, b): v.ident(v.t0(a, b)) for a in v.base.obj for b in v.base.obj}
    return make_monoidal_functor(v, v, identity_functor(v.base), v.ident(v.I), mu, f"id({v.name})")


def compose_monoidal_functors(f, g):
    """g after f."""
    if f.cod != g.dom:
        raise EndpointMismatch("monoidal functors are not composable")
    W = g.cod
    eps = W.comp(g.F1(f.eps), g.eps)
    mu = {(a, b): W.comp(g.F1(f.m(a, b)), g.m(f.F0(a), f.F0(b)))
          for a in f.dom.base.obj for b in f.dom.base.obj}
    return make_monoidal_functor(f.dom, g.cod, compose_functors(f.f, g.f), eps, mu, f"{g.name}∘{f.name}")


def check_monoidal_functor(d, limit=DEFAULT_WITNESS_LIMIT):
    V, W = d.dom, d.cod
    r = CheckReport(d.name or "monoidal functor", limit)
    r.extend(check_functor(d.f, limit))
    objs = V.base.obj.elems
    r.record("mfunctor/eps.typing", [] if W.has_arrow(d.eps, W.I, d.F0(V.I)) else [(d.eps,)])
    bad = [(a, b) for a, b in _cartesian(objs, repeat=2)
           if not W.has_arrow(d.m(a, b), W.t0(d.F0(a), d.F0(b)), d.F0(V.t0(a, b)))]
    r.record("mfunctor/mu.typing", bad)
    _check_iso_family(W, r, "mfunctor.eps", [((V.I,), d.eps)])
    _check_iso_family(W, r, "mfunctor.mu", (((a, b), d.m(a, b)) for a, b in _cartesian(objs, repeat=2)))
    bad = []
    for f, g in _cartesian(V.base.arr.elems, repeat=2):
        a, b = V.src(f), V.src(g)
        a2, b2 = V.tgt(f), V.tgt(g)
        lhs = _safe(lambda: W.comp(d.F1(V.t1(f, g)), d.m(a, b)))
        rhs = _safe(lambda: W.comp(d.m(a2, b2), W.t1(d.F1(f), d.F1(g))))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append((f, g))
    r.record("mfunctor/mu.naturality", bad)
    bad = []
    for a, b, c in _cartesian(objs, repeat=3):
        Fa, Fb, Fc = d.F0(a), d.F0(b), d.F0(c)
        lhs = _safe(lambda: W.comp(d.F1(V.alpha(a, b, c)), d.m(V.t0(a, b), c),
                                   W.t1(d.m(a, b), W.ident(Fc))))
        rhs = _safe(lambda: W.comp(d.m(a, V.t0(b, c)), W.t1(W.ident(Fa), d.m(b, c)),
                                   W.alpha(Fa, Fb, Fc)))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append((a, b, c))
    r.record("mfunctor/assoc", bad)
    bad_l, bad_r = [], []
    for a in objs:
        Fa = d.F0(a)
        lhs = _safe(lambda: W.comp(d.F1(V.lam(a)), d.m(V.I, a), W.t1(d.eps, W.ident(Fa))))
        if lhs is not None and lhs != W.lam(Fa):
            bad_l.append((a,))
        lhs = _safe(lambda: W.comp(d.F1(V.rho(a)), d.m(a, V.I), W.t1(W.ident(Fa), d.eps)))
        if lhs is not None and lhs != W.rho(Fa):
            bad_r.append((a,))
    r.record("mfunctor/left_unit", bad_l)
    r.record("mfunctor/right_unit", bad_r)
    return r


class MonoidalNatData:
    def __init__(self, n, src_mf, tgt_mf, name=""):
        if n.src_f != src_mf.f or n.tgt_f != tgt_mf.f:
            raise EndpointMismatch("transformation does not run between the monoidal functors")
        self.n, self.src_mf, self.tgt_mf, self.name = n, src_mf, tgt_mf, name


def check_monoidal_nat(d, limit=DEFAULT_WITNESS_LIMIT):
    F, G, n = d.src_mf, d.tgt_mf, d.n
    V, W = F.dom, F.cod
    if G.dom != V or G.cod != W:
        raise EndpointMismatch("monoidal functors are not parallel")
    r = CheckReport(d.name or "monoidal nat", limit)
    r.extend(check_nat(n, limit))
    bad = []
    for a, b in _cartesian(V.base.obj.elems, repeat=2):
        lhs = _safe(lambda: W.comp(n(V.t0(a, b)), F.m(a, b)))
        rhs = _safe(lambda: W.comp(G.m(a, b), W.t1(n(a), n(b))))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append((a, b))
    r.record("mnat/tensor", bad)
    lhs = _safe(lambda: W.comp(n(V.I), F.eps))
    r.record("mnat/unit", [(V.I,)] if lhs is not None and lhs != G.eps else [])
    return r
