from itertools import product as cart

import pytest
from hypothesis import given, strategies as st

from icat.ambient import FiniteMap, FiniteSet, STAR, compose_map, product, terminal
from icat.enriched import (check_enriched_category, check_enriched_functor, identity_enriched_functor,
                           indiscrete_enriched, make_enriched_functor)
from icat.externalization import (COINCIDENCE, FamilyNotProductClosed, FiberFunctorData, IncoherentFiberData,
                                  MalformedFamily, bar_functor, check_grothendieck,
                                  check_monoidal_grothendieck, check_reindex_strict, check_reindex_tensor,
                                  enriched_fiber, enriched_reindex, externalize_functor, fiber,
                                  fiber_iso_terminal, fiber_monoidal, grothendieck, monoidal_grothendieck,
                                  pull, reindex, small_coincidence_check, standard_family,
                                  underlying_commute_check)
from icat.internal_cat import check_category, check_functor, indiscrete
from icat.library import v_bool, v_omega, v_z2
from icat.monoidal import check_monoidal, check_monoidal_functor
from icat.externalization import reindex_monoidal_functor

VB, Z2, OM = v_bool(), v_z2(), v_omega()
SETS = [FiniteSet([f"p{k}" for k in range(n)], name=f"S{n}") for n in range(4)]


def raw_hom(c, a, b):
    return [f for f in c.arr if c.src.table[f] == a and c.tgt.table[f] == b]


@st.composite
def finite_maps(draw, dom, cod):
    if not len(cod):
        return FiniteMap(dom, cod, {}) if not len(dom) else None
    return FiniteMap(dom, cod, {a: draw(st.sampled_from(cod.elems)) for a in dom})


@st.composite
def composable(draw):
    """u: X'' → X', w: X' → X between small sets."""
    x2, x1, x0 = (draw(st.integers(1, 3)) for _ in range(3))
    u = draw(finite_maps(SETS[x2], SETS[x1]))
    w = draw(finite_maps(SETS[x1], SETS[x0]))
    return u, w


@pytest.mark.parametrize("n", range(4))
def test_fiber_is_power_of_base(n):
    for a in (VB.base, OM.base, indiscrete(FiniteSet(["x", "y"]))):
        c = fiber(a, SETS[n]).category()
        assert check_category(c).passed
        assert len(c.obj) == len(a.obj) ** n and len(c.arr) == len(a.arr) ** n
        for x in list(c.obj)[:6]:
            for y in list(c.obj)[:6]:
                expect = 1
                for p, q in zip(x, y):
                    expect *= len(raw_hom(a, p, q))
                assert len(c.hom(x, y)) == expect


def test_fiber_over_terminal_is_isomorphic_to_base():
    for a in (VB.base, OM.base, indiscrete(FiniteSet(["x", "y"]))):
        iso = fiber_iso_terminal(a)
        assert check_functor(iso).passed
        assert len(set(iso.f0.table.values())) == len(iso.cod.obj) == len(a.obj)
        assert len(set(iso.f1.table.values())) == len(iso.cod.arr) == len(a.arr)


@given(composable())
def test_reindexing_is_strict(uw):
    u, w = uw
    for a in (VB.base, indiscrete(FiniteSet(["x", "y"]))):
        assert check_reindex_strict(a, u, w).passed
        r = reindex(w, fiber(a, w.cod))
        for x in r.dom.obj:
            assert r.f0(x) == tuple(x[w.cod.elems.index(w(p))] for p in w.dom)


@given(composable())
def test_reindexing_preserves_tensor(uw):
    u, w = uw
    for v in (VB, Z2, OM):
        assert check_reindex_tensor(v, w).passed
        assert check_monoidal_functor(reindex_monoidal_functor(v, u)).passed


@pytest.mark.parametrize("n", range(3))
def test_fiber_monoidal_is_valid(n):
    for v in (VB, Z2, OM):
        assert check_monoidal(fiber_monoidal(v, SETS[n])).passed


def small_family():
    one, two = terminal(), SETS[2]
    u = FiniteMap(two, one, {p: STAR for p in two})
    d = FiniteMap(one, two, {STAR: "p0"})
    return [one, two], [u, d]


def test_grothendieck_counts_and_axioms():
    family, connecting = small_family()
    a = VB.base
    tc = grothendieck(a, family, connecting)
    assert check_grothendieck(tc, connecting).passed
    expect_obj = sum(len(a.obj) ** len(s) for s in family)
    assert len(tc.total.obj) == expect_obj
    expect_arr = 0
    for u in tc.maps.values():
        for x in cart(a.obj.elems, repeat=len(u.dom)):
            for y in cart(a.obj.elems, repeat=len(u.cod)):
                n = 1
                for i, p in enumerate(u.dom):
                    n *= len(raw_hom(a, x[i], y[u.cod.elems.index(u(p))]))
                expect_arr += n
    assert len(tc.total.arr) == expect_arr


def test_chosen_lifts_are_cartesian_by_brute_force():
    family, connecting = small_family()
    tc = grothendieck(VB.base, family, connecting)
    t = tc.total
    for u in connecting:
        for y in fiber(VB.base, u.cod).objects():
            lift = tc.lift(u, y)
            assert lift in t.arr
            for g in t.arr:
                if t.tgt(g) != t.tgt(lift):
                    continue
                for vk, v in tc.maps.items():
                    if v.cod == u.dom and compose_map(v, u) == tc.maps[g[0]]:
                        hits = [h for h in t.arr if t.src(h) == t.src(g) and h[0] == vk
                                and t.tgt(h) == t.src(lift) and t.compose(lift, h) == g]
                        assert len(hits) == 1


def test_grothendieck_rejects_bad_families():
    with pytest.raises(MalformedFamily):
        grothendieck(VB.base, [], [])
    with pytest.raises(MalformedFamily):
        grothendieck(VB.base, [terminal()], [FiniteMap(SETS[2], terminal(), {"p0": STAR, "p1": STAR})])
    with pytest.raises(FamilyNotProductClosed):
        monoidal_grothendieck(VB, [SETS[2]], [])


def test_monoidal_grothendieck_small():
    family, connecting = small_family()
    for v in (VB, Z2):
        mt = monoidal_grothendieck(v, family, connecting)
        assert check_monoidal_grothendieck(mt, connecting).passed


def test_standard_family_shape():
    family, connecting = standard_family()
    assert [len(s) for s in family] == [0, 1, 2, 1, 2, 4]
    assert len(connecting) == 8
    tc = grothendieck(Z2.base, family, connecting)
    assert check_grothendieck(tc, connecting).passed


def same_failures(x):
    a = small_coincidence_check(x, limit=None)
    b = check_enriched_category(x, limit=None)
    mapped = {COINCIDENCE[r.axiom]: r.witnesses for r in a.results if not r.passed}
    mine = {r.axiom: r.witnesses for r in b.results if not r.passed}
    return mapped == mine, a.passed


def test_coincidence_on_corpus(corpus_enriched):
    assert len(corpus_enriched) >= 8
    for x in corpus_enriched:
        same, ok = same_failures(x)
        assert same and ok


def test_coincidence_on_mutants(mutant_docs):
    seen = 0
    for doc in mutant_docs.values():
        for name in doc.names("enriched"):
            same, ok = same_failures(doc.get(name))
            assert same
            seen += not ok
    assert seen == 3


@given(st.lists(st.sampled_from("01"), min_size=8, max_size=8), st.lists(st.sampled_from("01"), min_size=2, max_size=2))
def test_coincidence_on_random_z2(cs, es):
    from icat.enriched import make_enriched
    ab = ["a", "b"]
    x = make_enriched(Z2, ab, {p: STAR for p in cart(ab, repeat=2)},
                      dict(zip(cart(ab, repeat=3), cs)), dict(zip(ab, es)))
    assert same_failures(x)[0]


def test_enriched_fibers_and_reindexing(corpus_enriched):
    u = FiniteMap(SETS[2], SETS[1], {"p0": "p0", "p1": "p0"})
    for x in corpus_enriched:
        if len(x.carrier) > 2:
            continue
        for s in SETS[:3]:
            assert check_enriched_category(enriched_fiber(x, s)).passed
        assert check_enriched_functor(enriched_reindex(x, u)).passed


@pytest.mark.parametrize("n", [0, 1, 2])
def test_underlying_square(corpus_enriched, n):
    for x in corpus_enriched:
        assert underlying_commute_check(x, SETS[n]).passed


IND = indiscrete_enriched(FiniteSet(["a", "b"]), Z2, "IndZ2")


def test_bar_recovers_functor():
    X = IND.carrier
    X2 = product(X, X).apex
    for f0 in cart("ab", repeat=2):
        for bits in cart("01", repeat=4):
            fn = make_enriched_functor(IND, IND, dict(zip("ab", f0)), dict(zip(IND.hom.dom.elems, bits)))
            if not check_enriched_functor(fn).passed:
                continue
            got = bar_functor(IND, IND, externalize_functor(fn, X), externalize_functor(fn, X2))
            assert got == fn


def test_bar_with_phi_and_incoherence():
    doc_v = VB
    ind = indiscrete_enriched(FiniteSet(["a", "b"]), doc_v, "Ind2")
    X = ind.carrier
    X2 = product(X, X).apex
    fn = identity_enriched_functor(ind)
    at_x = externalize_functor(fn, X)
    good = externalize_functor(fn, X2)
    swap = {"a": "b", "b": "a"}
    moved = FiberFunctorData(X2, lambda s: tuple(swap[p] for p in s), good.f1)
    with pytest.raises(IncoherentFiberData):
        bar_functor(ind, ind, at_x, moved)
    phi = (tuple(ind.e("a") for _ in X2), tuple(ind.e("a") for _ in X2))
    assert bar_functor(ind, ind, at_x, moved, phi) == fn

    chain = None
    from icat.library import thin_enriched
    hom = {(p, q): "1" if p <= q else "0" for p, q in cart("ab", repeat=2)}
    chain = thin_enriched(doc_v, ["a", "b"], hom)
    cfn = identity_enriched_functor(chain)
    cm = FiberFunctorData(X2, lambda s: tuple("a" for _ in s), externalize_functor(cfn, X2).f1)
    with pytest.raises(IncoherentFiberData):
        bar_functor(chain, chain, externalize_functor(cfn, X), cm,
                    (tuple("id1" for _ in X2), None))
