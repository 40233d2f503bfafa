from itertools import product as cart

import pytest
from hypothesis import given, strategies as st

from icat.ambient import FiniteSet, STAR
from icat.enriched import (EndpointMismatch, change_base_functor, change_base_nat, change_enriching_base,
                           check_enriched_category, check_enriched_functor, check_enriched_nat,
                           compose_enriched_functors, hcompose_enriched_nats, identity_enriched_functor,
                           identity_enriched_nat, indiscrete_enriched, lwhisker, make_enriched,
                           make_enriched_functor, make_enriched_nat, rwhisker, underlying_category,
                           underlying_functor, underlying_nat, vcompose_enriched_nats)
from icat.internal_cat import check_category, check_functor, check_nat, identity_functor
from icat.library import thin_enriched, v_bool, v_meet, v_omega, v_z2, v_z2_twisted_units
from icat.monoidal import check_monoidal_functor, identity_monoidal_functor, make_monoidal_functor

VB, Z2, Z2U, OM = v_bool(), v_z2(), v_z2_twisted_units(), v_omega()
AB = ["a", "b"]


def is_preorder(objects, rel):
    return (all((a, a) in rel for a in objects)
            and all((a, c) in rel for a in objects for b in objects for c in objects
                    if (a, b) in rel and (b, c) in rel))


def vbool_from_relation(objects, rel):
    hom = {(a, b): "1" if (a, b) in rel else "0" for a in objects for b in objects}
    return thin_enriched(VB, objects, hom)


@pytest.mark.parametrize("n", [1, 2])
def test_vbool_categories_are_preorders(n):
    objects = [f"x{k}" for k in range(n)]
    pairs = list(cart(objects, repeat=2))
    for bits in cart([0, 1], repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        assert check_enriched_category(vbool_from_relation(objects, rel)).passed == is_preorder(objects, rel)


def z2_cat(objects, comp, ident):
    hom = {(a, b): STAR for a in objects for b in objects}
    return make_enriched(Z2, objects, hom, comp, ident)


def z2_oracle(objects, comp, ident):
    """Associativity is the 2-cocycle condition; the units force c(x,y,y) = c(x,x,y) = e."""
    c = {k: int(v) for k, v in comp.items()}
    e = {k: int(v) for k, v in ident.items()}
    cocycle = all((c[(p, q, s)] + c[(q, r, s)]) % 2 == (c[(p, r, s)] + c[(p, q, r)]) % 2
                  for p, q, r, s in cart(objects, repeat=4))
    units = all(c[(p, q, q)] == e[q] and c[(p, p, q)] == e[p] for p, q in cart(objects, repeat=2))
    return cocycle and units


def test_z2_categories_exhaustive_on_two_objects():
    triples = list(cart(AB, repeat=3))
    valid = 0
    for cs in cart("01", repeat=8):
        comp = dict(zip(triples, cs))
        for es in cart("01", repeat=2):
            ident = dict(zip(AB, es))
            ok = check_enriched_category(z2_cat(AB, comp, ident)).passed
            assert ok == z2_oracle(AB, comp, ident)
            valid += ok
    assert valid == 8


@given(st.lists(st.sampled_from("01"), min_size=27, max_size=27), st.lists(st.sampled_from("01"), min_size=3, max_size=3))
def test_z2_categories_random_three_objects(cs, es):
    objects = ["a", "b", "c"]
    comp = dict(zip(cart(objects, repeat=3), cs))
    ident = dict(zip(objects, es))
    assert check_enriched_category(z2_cat(objects, comp, ident)).passed == z2_oracle(objects, comp, ident)


def test_omega_graded_exhaustive_against_twisted_cocycle():
    """With hom degrees d, associativity reads c013 + c123 = c023 + c012 + d23·d12·d01."""
    hom = {(p, q): "0" if p == q else "1" for p, q in cart(AB, repeat=2)}
    deg = {k: int(v) for k, v in hom.items()}
    triples = list(cart(AB, repeat=3))
    valid = 0
    for bits in cart([0, 1], repeat=8):
        comp = {t: ("t" if b else "e") + str(deg[(t[0], t[2])]) for t, b in zip(triples, bits)}
        for ebits in cart([0, 1], repeat=2):
            ident = {p: ("t" if b else "e") + "0" for p, b in zip(AB, ebits)}
            x = make_enriched(OM, AB, hom, comp, ident)
            c = dict(zip(triples, bits))
            e = dict(zip(AB, ebits))
            assoc = all((c[(p, q, s)] + c[(q, r, s)]) % 2
                        == (c[(p, r, s)] + c[(p, q, r)] + deg[(r, s)] * deg[(q, r)] * deg[(p, q)]) % 2
                        for p, q, r, s in cart(AB, repeat=4))
            units = all(c[(p, q, q)] == e[q] and c[(p, p, q)] == e[p] for p, q in cart(AB, repeat=2))
            ok = check_enriched_category(x).passed
            assert ok == (assoc and units)
            valid += ok
    assert valid > 0


def test_mutations_fail_one_axiom():
    x = indiscrete_enriched(FiniteSet(AB), Z2)
    comp = dict(x.comp.table)
    comp[("a", "b", "a")] = "1"
    r = check_enriched_category(make_enriched(Z2, AB, dict(x.hom.table), comp, dict(x.ident.table)))
    assert r.failed_axioms() == ["enriched/assoc"]
    assert r.witnesses("enriched/assoc")[0] == ("a", "b", "a", "b")
    ident = dict(x.ident.table)
    ident["a"] = "1"
    r = check_enriched_category(make_enriched(Z2, AB, dict(x.hom.table), dict(x.comp.table), ident))
    assert r.failed_axioms() == ["enriched/left_unit", "enriched/right_unit"]


def test_typing_mutation_fails_typing_only():
    hom = {(p, q): "1" if p <= q else "0" for p, q in cart("abc", repeat=2)}
    hom[("a", "c")] = "0"
    r = check_enriched_category(thin_enriched(VB, list("abc"), hom))
    assert r.failed_axioms() == ["enriched/typing.comp"]
    assert r.witnesses("enriched/typing.comp") == [("a", "b", "c")]


@pytest.mark.parametrize("v", [VB, Z2, Z2U, OM, v_meet()], ids=lambda v: v.name)
def test_indiscrete_enrichment_passes(v):
    for n in range(4):
        x = indiscrete_enriched(FiniteSet([f"x{k}" for k in range(n)]), v)
        assert check_enriched_category(x).passed


def z2_functors(x, y):
    out = []
    for f0 in cart(y.carrier.elems, repeat=len(x.carrier)):
        for f1 in cart("01", repeat=len(x.hom.dom)):
            fn = make_enriched_functor(x, y, dict(zip(x.carrier.elems, f0)), dict(zip(x.hom.dom.elems, f1)))
            if check_enriched_functor(fn).passed:
                out.append(fn)
    return out


def z2_nats(f, g):
    out = []
    for bits in cart("01", repeat=len(f.dom.carrier)):
        n = make_enriched_nat(f, g, dict(zip(f.dom.carrier.elems, bits)))
        if check_enriched_nat(n).passed:
            out.append(n)
    return out


IND = indiscrete_enriched(FiniteSet(AB), Z2, "IndZ2")


def test_z2_functors_match_coboundary_oracle():
    """Endofunctors of Ind over Z/2: F1 must satisfy F1(x,z) = F1(y,z) + F1(x,y) and F1(x,x) = 0."""
    found = z2_functors(IND, IND)
    expect = 0
    for f0 in cart(AB, repeat=2):
        for f1 in cart([0, 1], repeat=4):
            t = dict(zip(cart(AB, repeat=2), f1))
            if all(t[(p, r)] == (t[(q, r)] + t[(p, q)]) % 2 for p, q, r in cart(AB, repeat=3)):
                expect += 1
    assert len(found) == expect == 8


def test_functor_category_laws():
    fs = z2_functors(IND, IND)
    for f, g, h in cart(fs[:4], repeat=3):
        assert compose_enriched_functors(compose_enriched_functors(f, g), h) == \
            compose_enriched_functors(f, compose_enriched_functors(g, h))
    for f in fs:
        i = identity_enriched_functor(IND)
        assert compose_enriched_functors(i, f) == f == compose_enriched_functors(f, i)
        assert check_enriched_functor(compose_enriched_functors(f, f)).passed


def test_two_category_laws():
    fs = z2_functors(IND, IND)[:4]
    checked = 0
    for f, g, h in cart(fs, repeat=3):
        for a in z2_nats(f, g):
            assert vcompose_enriched_nats(identity_enriched_nat(f), a) == a
            assert vcompose_enriched_nats(a, identity_enriched_nat(g)) == a
            for b in z2_nats(g, h):
                assert check_enriched_nat(vcompose_enriched_nats(a, b)).passed
                for k in fs:
                    assert check_enriched_nat(lwhisker(b, k)).passed
                    assert check_enriched_nat(rwhisker(k, b)).passed
                checked += 1
    assert checked > 0


def test_interchange_law():
    fs = z2_functors(IND, IND)[:3]
    count = 0
    for f, g, h in cart(fs, repeat=3):
        for a in z2_nats(f, g):
            for a2 in z2_nats(g, h):
                for k, l, m in cart(fs, repeat=3):
                    for b in z2_nats(k, l):
                        for b2 in z2_nats(l, m):
                            lhs = hcompose_enriched_nats(vcompose_enriched_nats(a, a2), vcompose_enriched_nats(b, b2))
                            rhs = vcompose_enriched_nats(hcompose_enriched_nats(a, b), hcompose_enriched_nats(a2, b2))
                            assert lhs == rhs
                            count += 1
    assert count > 20


def test_nat_mutation_fails_naturality():
    f = identity_enriched_functor(IND)
    r = check_enriched_nat(make_enriched_nat(f, f, {"a": "0", "b": "1"}))
    assert r.failed_axioms() == ["nat/naturality"]
    assert r.witnesses("nat/naturality") == [("a", "b"), ("b", "a")]


def test_functor_mutation_fails_comp():
    f = identity_enriched_functor(IND)
    f1 = dict(f.f1.table)
    f1[("a", "b")] = "1"
    r = check_enriched_functor(make_enriched_functor(IND, IND, dict(f.f0.table), f1))
    assert r.failed_axioms() == ["functor/comp"]
    assert r.witnesses("functor/comp") == [("a", "b", "a"), ("b", "a", "b")]


def test_vcompose_requires_matching_functors():
    fs = z2_functors(IND, IND)
    a = identity_enriched_nat(fs[0])
    b = identity_enriched_nat(fs[1])
    with pytest.raises(EndpointMismatch):
        vcompose_enriched_nats(a, b)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_underlying_category_of_a_preorder(n):
    objects = [f"x{k}" for k in range(n)]
    pairs = list(cart(objects, repeat=2))
    for bits in cart([0, 1], repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if not is_preorder(objects, rel):
            continue
        u = underlying_category(vbool_from_relation(objects, rel))
        assert check_category(u).passed
        assert {(t[0], t[1]) for t in u.arr} == rel and len(u.arr) == len(rel)


def test_underlying_of_z2_category_counts_elements():
    u = underlying_category(IND)
    assert len(u.arr) == 8 and check_category(u).passed
    for f in z2_functors(IND, IND):
        assert check_functor(underlying_functor(f)).passed
        for n in z2_nats(f, f):
            assert check_nat(underlying_nat(n)).passed


def test_change_of_base_along_identity_is_identity():
    for v in (VB, Z2, OM):
        x = indiscrete_enriched(FiniteSet(AB), v)
        assert change_enriching_base(identity_monoidal_functor(v), x) == x


def test_change_of_base_along_strong_functor():
    mf = make_monoidal_functor(Z2, Z2U, identity_functor(Z2.base), "1", {(STAR, STAR): "0"})
    assert check_monoidal_functor(mf).passed
    for cs in cart("01", repeat=8):
        comp = dict(zip(cart(AB, repeat=3), cs))
        for es in cart("01", repeat=2):
            x = z2_cat(AB, comp, dict(zip(AB, es)))
            if check_enriched_category(x).passed:
                y = change_enriching_base(mf, x)
                assert y.v == Z2U and check_enriched_category(y).passed
    fs = z2_functors(IND, IND)
    for f in fs:
        assert check_enriched_functor(change_base_functor(mf, f)).passed
        for n in z2_nats(f, f):
            assert check_enriched_nat(change_base_nat(mf, n)).passed
