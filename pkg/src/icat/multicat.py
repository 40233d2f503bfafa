"""Free categories on graphs, FC-multicategories, and the translation between
enriched categories and M_V-enriched multicategories on Ind^X.

Everything infinite is enumerated lazily up to a path-length bound. An
arrow of M_V is (vs, f) with vs listed in tensor order and
src(f) = ((vs[0] ⊗ vs[1]) ⊗ ...) ⊗ vs[-1]; its domain path traverses vs
backwards, so that a path x0 → x1 → x2 in Ind(X) corresponds to
Hom(x1, x2) ⊗ Hom(x0, x1).
"""

import os
from itertools import product as _cartesian
from typing import NamedTuple

from .ambient import FiniteMap, FiniteSet, STAR, akey, fmt_atom, product
from .enriched import make_enriched, make_enriched_functor
from .monoidal import IllTyped
from .report import CheckReport, DEFAULT_WITNESS_LIMIT


class BoundExceeded(Exception):
    pass


class InvalidMulticatData(Exception):
    pass


def default_bound():
    return int(os.environ.get("ICAT_BOUND", "3"))


class FGraph:
    def __init__(self, vertices, edges, src, tgt, name=""):
        if src.dom != edges or tgt.dom != edges or src.cod != vertices or tgt.cod != vertices:
            raise ValueError("graph source/target maps have wrong endpoints")
        self.vertices, self.edges, self.src, self.tgt, self.name = vertices, edges, src, tgt, name
        self._out = {v: [] for v in vertices}
        for e in edges:
            self._out[src(e)].append(e)

    def out(self, v):
        return self._out[v]


def make_graph(vertices, edges, name=""):
    V = FiniteSet(vertices)
    E = FiniteSet(edges)
    return FGraph(V, E, FiniteMap(E, V, {e: st[0] for e, st in edges.items()}),
                  FiniteMap(E, V, {e: st[1] for e, st in edges.items()}), name)


class Path(NamedTuple):
    start: object
    edges: tuple
    end: object

    @property
    def length(self):
        return len(self.edges)

    def then(self, other):
        if self.end != other.start:
            raise ValueError("paths do not meet")
        return Path(self.start, self.edges + other.edges, other.end)


def empty_path(v):
    return Path(v, (), v)


def paths(vertices, out, tgt, bound, weight=None):
    """All paths with at most `bound` edges and total weight at most `bound`,
    in canonical order (length, then edges)."""
    found = []

    def grow(p, w):
        found.append(p)
        if len(p.edges) == bound:
            return
        for e in out(p.end):
            we = 1 if weight is None else weight(e)
            if w + we <= bound:
                grow(Path(p.start, p.edges + (e,), tgt(e)), w + we)
    for v in vertices:
        grow(empty_path(v), 0)
    found.sort(key=lambda p: (len(p.edges), akey(p.start), akey(p.edges)))
    return found


class LazyCategory:
    """FC(G) truncated at paths of length ≤ bound."""

    def __init__(self, graph, bound):
        if bound < 0:
            raise ValueError("bound must be non-negative")
        self.graph = graph
        self.bound = bound
        self.objects = graph.vertices

    def arrows(self):
        g = self.graph
        return paths(g.vertices, g.out, g.tgt, self.bound)

    def identity(self, v):
        return empty_path(v)

    def compose(self, q, p):
        """q after p."""
        if p.length + q.length > self.bound:
            raise BoundExceeded(f"composite of length {p.length + q.length} exceeds bound {self.bound}")
        return p.then(q)


def free_category(g, bound=None):
    return LazyCategory(g, default_bound() if bound is None else bound)


def flatten(P):
    """μ: a path of paths to a path."""
    edges = tuple(e for p in P.edges for e in p.edges)
    return Path(P.start, edges, P.end)


def eta(e, g):
    return Path(g.src(e), (e,), g.tgt(e))


def fc_map(P, vmap, emap):
    return Path(vmap(P.start), tuple(emap(e) for e in P.edges), vmap(P.end))


def walk_counts(g, bound):
    """Number of length-k walks for k ≤ bound, from powers of the adjacency matrix."""
    vs = g.vertices.elems
    n = len(vs)
    pos = {v: k for k, v in enumerate(vs)}
    A = [[0] * n for _ in range(n)]
    for e in g.edges:
        A[pos[g.src(e)]][pos[g.tgt(e)]] += 1
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    counts = []
    for _ in range(bound + 1):
        counts.append(sum(map(sum, M)))
        M = [[sum(M[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return counts


def fc_monad_laws(g, bound=None, limit=DEFAULT_WITNESS_LIMIT):
    bound = default_bound() if bound is None else bound
    r = CheckReport(f"FC monad on {g.name or 'graph'}", limit)
    lvl1 = paths(g.vertices.elems, g.out, g.tgt, bound)

    def out1(v):
        return [p for p in lvl1 if p.start == v]
    lvl2 = paths(g.vertices.elems, _memo_out(out1), lambda p: p.end, bound, weight=lambda p: p.length)

    def out2(v):
        return [p for p in lvl2 if p.start == v]
    lvl3 = paths(g.vertices.elems, _memo_out(out2), lambda p: p.end, bound,
                 weight=lambda P: sum(p.length for p in P.edges))
    r.record("monad/left_unit", ((p,) for p in lvl1 if flatten(Path(p.start, (p,), p.end)) != p))
    r.record("monad/right_unit", ((p,) for p in lvl1
                                  if flatten(fc_map(p, lambda v: v, lambda e: eta(e, g))) != p))
    bad = []
    for P in lvl3:
        lhs = flatten(flatten(P))
        rhs = flatten(fc_map(P, lambda v: v, flatten))
        if lhs != rhs:
            bad.append((P,))
    r.record("monad/assoc", bad)
    counts = walk_counts(g, bound)
    bad = [(str(k),) for k in range(bound + 1) if sum(1 for p in lvl1 if p.length == k) != counts[k]]
    r.record("monad/count", bad)
    r.record("monad/distinct", [] if len(set(lvl1)) == len(lvl1) else [("duplicate",)])
    return r


def _memo_out(fn):
    cache = {}

    def out(v):
        if v not in cache:
            cache[v] = fn(v)
        return cache[v]
    return out


# ---------------------------------------------------------------- FC-multicategories


class FCMulticategory:
    """C1 shares its vertices with C0; dom is a path in C0 and cod an edge of C0."""

    bound = 0

    def arrows(self):
        raise NotImplementedError

    def dom(self, a):
        raise NotImplementedError

    def cod(self, a):
        raise NotImplementedError

    def mcomp(self, a, inners):
        raise NotImplementedError

    def mid(self, e):
        raise NotImplementedError

    def edge_ends(self, e):
        raise NotImplementedError

    def arity(self, a):
        return len(self.dom(a).edges)


class IndMulticat(FCMulticategory):
    """Arrows are vertex lists (x0, ..., xn); composition flattens."""

    def __init__(self, x, bound):
        self.x = x
        self.bound = bound
        self.vertices = x.elems

    def arrows(self):
        out = []
        for n in range(self.bound + 1):
            out.extend(_cartesian(self.vertices, repeat=n + 1))
        return out

    def edges(self):
        return list(_cartesian(self.vertices, repeat=2))

    def edge_ends(self, e):
        return e

    def dom(self, a):
        return Path(a[0], tuple(zip(a, a[1:])), a[-1])

    def cod(self, a):
        return (a[0], a[-1])

    def mcomp(self, a, inners):
        edges = self.dom(a).edges
        if len(inners) != len(edges) or any(self.cod(p) != e for p, e in zip(inners, edges)):
            raise InvalidMulticatData("inner arrows do not match the outer domain")
        out = (a[0],) + tuple(x for p in inners for x in p[1:])
        if len(out) - 1 > self.bound:
            raise BoundExceeded(f"composite arity {len(out) - 1} exceeds bound {self.bound}")
        return out

    def mid(self, e):
        return e


def ind_multicat(x, bound=None):
    return IndMulticat(x, default_bound() if bound is None else bound)


class MVMulticat(FCMulticategory):
    def __init__(self, v, bound):
        self.v = v
        self.bound = bound
        self.vertices = (STAR,)
        self._can = {}
        self._memo = {}

    def edges(self):
        return list(self.v.base.obj.elems)

    def edge_ends(self, e):
        return (STAR, STAR)

    def arrows(self):
        v = self.v
        out = []
        for n in range(self.bound + 1):
            for vs in _cartesian(v.base.obj.elems, repeat=n):
                for f in v.base.arrows_from(v.fold0(vs)):
                    out.append((vs, f))
        return out

    def dom(self, a):
        return Path(STAR, tuple(reversed(a[0])), STAR)

    def cod(self, a):
        return self.v.tgt(a[1])

    def _merge(self, p, q):
        v = self.v
        P, Q = v.fold0(p), v.fold0(q)
        if not q:
            return v.rho(P)
        if not p:
            return v.lam(Q)
        if len(q) == 1:
            return v.ident(v.t0(P, Q))
        q1, b = q[:-1], q[-1]
        Q1 = v.fold0(q1)
        return v.comp(v.t1(self._merge(p, q1), v.ident(b)), v.inv(v.alpha(P, Q1, b)))

    def canonical(self, tree):
        """(leaves, arrow value(tree) → fold0(leaves)) for a bracketing tree."""
        if tree in self._can:
            return self._can[tree]
        v = self.v
        if tree[0] == "u":
            out = ((), v.ident(v.I))
        elif tree[0] == "o":
            out = ((tree[1],), v.ident(tree[1]))
        else:
            pa, fa = self.canonical(tree[1])
            pb, fb = self.canonical(tree[2])
            out = (pa + pb, v.comp(self._merge(pa, pb), v.t1(fa, fb)))
        self._can[tree] = out
        return out

    def mcomp(self, a, inners):
        key = (a, tuple(inners))
        if key not in self._memo:
            self._memo[key] = self._mcomp(a, key[1])
        return self._memo[key]

    def _mcomp(self, a, inners):
        v = self.v
        vs, f = a
        dom = self.dom(a).edges
        if len(inners) != len(dom) or any(self.cod(q) != e for q, e in zip(inners, dom)):
            raise InvalidMulticatData("inner arrows do not match the outer domain")
        ts = list(reversed(inners))
        flat = tuple(w for q in ts for w in q[0])
        if len(flat) > self.bound:
            raise BoundExceeded(f"composite arity {len(flat)} exceeds bound {self.bound}")
        tree = _fold_trees([_tree(q[0]) for q in ts])
        _, can = self.canonical(tree)
        return (flat, v.comp(f, v.fold1([q[1] for q in ts]), v.inv(can)))

    def mid(self, e):
        return ((e,), self.v.ident(e))


def _tree(vs):
    if not vs:
        return ("u",)
    t = ("o", vs[0])
    for w in vs[1:]:
        t = ("t", t, ("o", w))
    return t


def _fold_trees(ts):
    if not ts:
        return ("u",)
    t = ts[0]
    for s in ts[1:]:
        t = ("t", t, s)
    return t


def build_MV(v, bound=None):
    return MVMulticat(v, default_bound() if bound is None else bound)


class TabulatedMulticat(FCMulticategory):
    """An FC-multicategory given by explicit finite tables."""

    def __init__(self, vertices, edges, arrows, mids, comps, name=""):
        self.vertices = tuple(vertices)
        self._edges = dict(edges)
        self._arrows = dict(arrows)
        self._mids = dict(mids)
        self._comps = dict(comps)
        self.name = name
        self.bound = max((len(d.edges) for d, _ in self._arrows.values()), default=0)

    def edges(self):
        return list(self._edges)

    def edge_ends(self, e):
        return self._edges[e]

    def arrows(self):
        return sorted(self._arrows, key=akey)

    def dom(self, a):
        return self._arrows[a][0]

    def cod(self, a):
        return self._arrows[a][1]

    def mcomp(self, a, inners):
        key = (a, tuple(inners))
        if key not in self._comps:
            arity = sum(self.arity(q) for q in inners)
            if arity > self.bound:
                raise BoundExceeded(f"composite arity {arity} exceeds bound {self.bound}")
            raise InvalidMulticatData(f"no composite for {fmt_atom(a)} with {len(inners)} inner arrows")
        return self._comps[key]

    def mid(self, e):
        return self._mids[e]

    def tables(self):
        return self._edges, self._arrows, self._mids, self._comps


class _Index:
    """Arrows bucketed by codomain, with domains and arities precomputed."""

    def __init__(self, m):
        self.arrows = m.arrows()
        self.dom = {a: m.dom(a) for a in self.arrows}
        self.arity = {a: len(d.edges) for a, d in self.dom.items()}
        self.by_cod = {}
        for a in self.arrows:
            self.by_cod.setdefault(m.cod(a), []).append(a)

    def choose(self, edges, budget):
        """Sequences of arrows with codomains `edges` and total arity ≤ budget."""
        if not edges:
            yield ()
            return
        for q in self.by_cod.get(edges[0], ()):
            k = self.arity[q]
            if k <= budget:
                for rest in self.choose(edges[1:], budget - k):
                    yield (q,) + rest

    def configurations(self, bound):
        for a in self.arrows:
            for inners in self.choose(self.dom[a].edges, bound):
                yield a, inners

    def inner_choices(self, inners, budget):
        if not inners:
            yield ()
            return
        for first in self.choose(self.dom[inners[0]].edges, budget):
            used = sum(self.arity[c] for c in first)
            for rest in self.inner_choices(inners[1:], budget - used):
                yield (first,) + rest


def configurations(m, bound=None):
    """All (a, inners) with inners matching dom(a) and total arity ≤ bound."""
    return _Index(m).configurations(m.bound if bound is None else bound)


def tabulate(m, bound=None, name=""):
    bound = m.bound if bound is None else bound
    arrows = {a: (m.dom(a), m.cod(a)) for a in m.arrows() if m.arity(a) <= bound}
    edges = {e: m.edge_ends(e) for e in m.edges()}
    mids = {e: m.mid(e) for e in edges}
    comps = {}
    for a, inners in configurations(m, bound):
        comps[(a, inners)] = m.mcomp(a, inners)
    return TabulatedMulticat(m.vertices, edges, arrows, mids, comps, name)


def _try(fn):
    try:
        return fn()
    except (BoundExceeded, InvalidMulticatData, IllTyped, KeyError):
        return None


def check_fc_multicat(m, bound=None, limit=DEFAULT_WITNESS_LIMIT):
    bound = m.bound if bound is None else bound
    r = CheckReport(getattr(m, "name", "") or "multicategory", limit)
    bad = []
    for a in m.arrows():
        d, c = m.dom(a), m.cod(a)
        ok = all(m.edge_ends(e)[1] == m.edge_ends(e2)[0] for e, e2 in zip(d.edges, d.edges[1:]))
        ok = ok and (not d.edges or (m.edge_ends(d.edges[0])[0] == d.start
                                     and m.edge_ends(d.edges[-1])[1] == d.end))
        ok = ok and m.edge_ends(c) == (d.start, d.end)
        if not ok:
            bad.append((a,))
    r.record("multicat/typing", bad)
    bad = []
    for e in m.edges():
        s, t = m.edge_ends(e)
        a = m.mid(e)
        if m.dom(a) != Path(s, (e,), t) or m.cod(a) != e:
            bad.append((e,))
    r.record("multicat/mid.typing", bad)
    ix = _Index(m)
    configs = list(ix.configurations(bound))
    bad = []
    for a, inners in configs:
        c = _try(lambda: m.mcomp(a, inners))
        want = Path(m.dom(a).start, tuple(e for q in inners for e in m.dom(q).edges), m.dom(a).end)
        if c is None or m.dom(c) != want or m.cod(c) != m.cod(a):
            bad.append((a, inners))
    r.record("multicat/mcomp.typing", bad)
    bad_l, bad_r = [], []
    for a in m.arrows():
        if m.arity(a) > bound:
            continue
        lhs = _try(lambda: m.mcomp(m.mid(m.cod(a)), (a,)))
        if lhs != a:
            bad_l.append((a,))
        rhs = _try(lambda: m.mcomp(a, tuple(m.mid(e) for e in m.dom(a).edges)))
        if rhs != a:
            bad_r.append((a,))
    r.record("multicat/left_unit", bad_l)
    r.record("multicat/right_unit", bad_r)
    bad = []
    for a, inners in configs:
        mid = _try(lambda: m.mcomp(a, inners))
        if mid is None:
            continue
        for cs in ix.inner_choices(inners, bound):
            lhs = _try(lambda: m.mcomp(mid, tuple(c for cc in cs for c in cc)))
            rhs = _try(lambda: m.mcomp(a, tuple(m.mcomp(q, cc) for q, cc in zip(inners, cs))))
            if lhs != rhs:
                bad.append((a, inners, cs))
    r.record("multicat/assoc", bad)
    return r


# ---------------------------------------------------------------- enriched ↔ multicat


class MulticatMap:
    """A map of FC-multicategories Ind^X → M_V: hom on edges and a C1 component."""

    def __init__(self, source, target, hom, component):
        self.source = source
        self.target = target
        self.hom = hom
        self.component = component

    def vertex(self, x):
        return STAR

    def edge(self, e):
        return self.hom(e)

    def __call__(self, a):
        return self.component(a)


def check_multicat_map(mm, bound=None, limit=DEFAULT_WITNESS_LIMIT):
    S, T = mm.source, mm.target
    bound = S.bound if bound is None else bound
    r = CheckReport("multicategory map", limit)
    bad_d, bad_c = [], []
    for a in S.arrows():
        img = _try(lambda: mm(a))
        d = S.dom(a)
        want = Path(mm.vertex(d.start), tuple(mm.edge(e) for e in d.edges), mm.vertex(d.end))
        if img is None or T.dom(img) != want:
            bad_d.append((a,))
        if img is None or T.cod(img) != mm.edge(S.cod(a)):
            bad_c.append((a,))
    r.record("mcfunctor/prism.dom", bad_d)
    r.record("mcfunctor/prism.cod", bad_c)
    r.record("mcfunctor/unit", ((e,) for e in S.edges() if _try(lambda: mm(S.mid(e))) != T.mid(mm.edge(e))))
    bad = []
    for a, inners in configurations(S, bound):
        lhs = _try(lambda: mm(S.mcomp(a, inners)))
        rhs = _try(lambda: T.mcomp(mm(a), tuple(mm(q) for q in inners)))
        if lhs is None or lhs != rhs:
            bad.append((a, inners))
    r.record("mcfunctor/comp", bad)
    return r


def iterated_composite(x, p, memo=None):
    """Left-nested composite Hom(x_{n-1},x_n) ⊗ ... ⊗ Hom(x0,x1) → Hom(x0,x_n)."""
    v = x.v
    if len(p) == 1:
        return x.e(p[0])
    if len(p) == 2:
        return v.ident(x.h(p[0], p[1]))
    if memo is not None and p in memo:
        return memo[p]
    rest = iterated_composite(x, p[1:], memo)
    out = v.comp(x.c(p[0], p[1], p[-1]), v.t1(rest, v.ident(x.h(p[0], p[1]))))
    if memo is not None:
        memo[p] = out
    return out


def to_multicat(x, bound=None):
    bound = default_bound() if bound is None else bound
    S = ind_multicat(x.carrier, bound)
    T = build_MV(x.v, bound)
    memo = {}

    def component(p):
        vs = tuple(x.h(p[k - 1], p[k]) for k in range(len(p) - 1, 0, -1))
        return (vs, iterated_composite(x, p, memo))
    return MulticatMap(S, T, lambda e: x.h(*e), component)


def from_multicat(mm, bound=None, name=""):
    S, T = mm.source, mm.target
    if not isinstance(S, IndMulticat) or not isinstance(T, MVMulticat):
        raise InvalidMulticatData("expected a map Ind^X → M_V")
    if S.bound < 2:
        raise InvalidMulticatData("reading off composition needs paths of length 2")
    report = check_multicat_map(mm, bound)
    if not report.passed:
        axiom, w = report.first_witness()
        raise InvalidMulticatData(f"{axiom} fails at {' '.join(fmt_atom(a) for a in w)}")
    X = S.x.elems
    hom = {(a, b): mm.edge((a, b)) for a in X for b in X}
    comp = {(a, b, c): mm((a, b, c))[1] for a in X for b in X for c in X}
    ident = {a: mm((a,))[1] for a in X}
    return make_enriched(T.v, X, hom, comp, ident, name or S.x.name)


def multicat_functor_roundtrip(fn, bound=None, limit=DEFAULT_WITNESS_LIMIT):
    bound = default_bound() if bound is None else bound
    X, Y, v = fn.dom, fn.cod, fn.dom.v
    MX, MY = to_multicat(X, bound), to_multicat(Y, bound)
    T = MX.target
    r = CheckReport(f"multicat functor {fn.name}", limit)
    f0 = dict(fn.f0.table)
    f1 = {k: fn.F1(*k) for k in fn.f1.table}
    back = make_enriched_functor(X, Y, f0, f1, fn.name)
    r.record("roundtrip/functor", [] if back == fn else [("functor",)])
    bad = []

    def unary(a, b):
        return ((X.h(a, b),), f1[(a, b)])
    for p in MX.source.arrows():
        lhs = _try(lambda: T.mcomp(unary(p[0], p[-1]), (MX(p),)))
        fp = tuple(f0[a] for a in p)
        rhs = _try(lambda: T.mcomp(MY(fp), tuple(unary(p[k], p[k + 1]) for k in range(len(p) - 1))))
        if lhs is None or lhs != rhs:
            bad.append((p,))
    r.record("mcfunctor/axiom", bad)
    return r


def multicat_roundtrip(x, bound=None, limit=DEFAULT_WITNESS_LIMIT):
    """from_multicat(to_multicat(x)) == x, plus the map's own axioms."""
    bound = default_bound() if bound is None else bound
    mm = to_multicat(x, bound)
    r = CheckReport(f"roundtrip {x.name}", limit)
    r.extend(check_multicat_map(mm, bound, limit))
    try:
        back = from_multicat(mm, bound)
        ok = back == x
    except InvalidMulticatData:
        ok = False
    r.record("roundtrip/enriched", [] if ok else [(x.name or "x",)])
    return r
