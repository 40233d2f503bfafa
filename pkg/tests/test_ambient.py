from itertools import product as cart

import pytest
from hypothesis import given, strategies as st

from icat.ambient import (DomainMismatch, FiniteMap, FiniteSet, NotACone, akey, all_maps, bang,
                          compose_map, constant_map, diagonal, equalizer, fmt_atom, identity_map,
                          map_product, power, product, pullback, sort_atoms, terminal)

SETS = [FiniteSet([str(k) for k in range(n)], name=f"S{n}") for n in range(4)]


def small_sets():
    return st.integers(0, 3).map(lambda n: SETS[n])


def maps(dom, cod):
    if not cod.elems:
        return st.just(FiniteMap(dom, cod, {})) if not dom.elems else st.nothing()
    return st.lists(st.sampled_from(cod.elems), min_size=len(dom), max_size=len(dom)).map(
        lambda vals: FiniteMap(dom, cod, zip(dom.elems, vals)))


def count_mediators(z, apex, legs, cone):
    """Brute force: maps z → apex commuting with every leg."""
    return sum(1 for m in all_maps(z, apex)
               if all(compose_map(m, leg) == c for leg, c in zip(legs, cone)))


def test_atoms_order_strings_before_tuples():
    xs = [("a",), "b", ("a", "b"), "a", ()]
    assert sort_atoms(xs) == ["a", "b", (), ("a",), ("a", "b")]
    assert fmt_atom(("a", ("b", "c"))) == "⟨a,⟨b,c⟩⟩"
    assert akey("a") < akey(())


def test_finite_set_rejects_duplicates_and_non_atoms():
    with pytest.raises(ValueError):
        FiniteSet(["a", "a"])
    with pytest.raises(TypeError):
        FiniteSet([1])


def test_finite_map_totality():
    a, b = SETS[2], SETS[1]
    with pytest.raises(DomainMismatch):
        FiniteMap(a, b, {"0": "0"})
    with pytest.raises(DomainMismatch):
        FiniteMap(a, b, {"0": "0", "1": "7"})


@given(small_sets().filter(len), small_sets().filter(len), small_sets().filter(len), st.data())
def test_composition_is_associative_and_unital(a, b, c, data):
    f = data.draw(maps(a, b))
    g = data.draw(maps(b, c))
    h = data.draw(maps(c, a))
    assert compose_map(compose_map(f, g), h) == compose_map(f, compose_map(g, h))
    assert compose_map(identity_map(a), f) == f == compose_map(f, identity_map(b))


def test_compose_checks_endpoints():
    with pytest.raises(DomainMismatch):
        compose_map(identity_map(SETS[1]), identity_map(SETS[2]))


@pytest.mark.parametrize("na,nb", list(cart(range(4), repeat=2)))
def test_product_universal_property_exhaustive(na, nb):
    a, b = SETS[na], SETS[nb]
    cone = product(a, b)
    assert len(cone.apex) == na * nb
    for nz in range(3):
        z = SETS[nz]
        for f in all_maps(z, a):
            for g in all_maps(z, b):
                m = cone.mediate(f, g)
                assert compose_map(m, cone.legs[0]) == f and compose_map(m, cone.legs[1]) == g
                if na * nb <= 4:
                    assert count_mediators(z, cone.apex, cone.legs, (f, g)) == 1


@pytest.mark.parametrize("n", range(4))
def test_pullback_universal_property_exhaustive(n):
    a, c = SETS[2], SETS[n]
    if n == 0:
        return
    for f in all_maps(a, c):
        for g in all_maps(SETS[2], c):
            cone = pullback(f, g)
            assert {(x, y) for x in a for y in g.dom if f(x) == g(y)} == set(cone.apex)
            for z in SETS[:3]:
                for p in all_maps(z, a):
                    for q in all_maps(z, g.dom):
                        commutes = compose_map(p, f) == compose_map(q, g)
                        if len(cone.apex) <= 4:
                            want = 1 if commutes else 0
                            assert count_mediators(z, cone.apex, cone.legs, (p, q)) == want
                        if not commutes:
                            with pytest.raises(NotACone):
                                cone.mediate(p, q)


def test_equalizer_universal_property_exhaustive():
    a, b = SETS[3], SETS[2]
    for f in all_maps(a, b):
        for g in all_maps(a, b):
            cone = equalizer(f, g)
            (inc,) = cone.legs
            assert compose_map(inc, f) == compose_map(inc, g)
            for z in SETS[:3]:
                for h in all_maps(z, a):
                    ok = compose_map(h, f) == compose_map(h, g)
                    assert count_mediators(z, cone.apex, cone.legs, (h,)) == (1 if ok else 0)


def test_terminal_and_bang():
    one = terminal()
    assert len(one) == 1
    for z in SETS:
        assert count_mediators(z, one, (), ()) == 1
        assert bang(z).cod == one


def test_power_diagonal_and_map_product():
    s = SETS[2]
    assert len(power(s, 3)) == 8 and all(len(t) == 3 for t in power(s, 3))
    d = diagonal(s)
    p = product(s, s)
    assert compose_map(d, p.legs[0]) == identity_map(s) == compose_map(d, p.legs[1])
    f = constant_map(s, SETS[1], "0")
    fp = map_product(f, identity_map(s))
    assert fp(("1", "0")) == ("0", "0")
