from itertools import product as cart

import pytest

from icat.ambient import STAR
from icat.internal_cat import identity_functor, identity_nat, make_nat
from icat.library import commutative_deloop, poset_monoidal, v_bool, v_meet, v_omega, v_z2, v_z2_twisted_units
from icat.monoidal import (IllTyped, MonoidalNatData, check_monoidal, check_monoidal_functor, check_monoidal_nat,
                           compose_monoidal_functors, identity_monoidal_functor, is_strict, make_monoidal_functor)

LIBRARY = [v_bool, v_z2, v_z2_twisted_units, v_meet, v_omega]


def zn(n, alpha, lam, rho):
    els = [str(k) for k in range(n)]
    return commutative_deloop(els, lambda g, f: str((int(g) + int(f)) % n), "0", f"Z{n}",
                              lunit=lam, runit=rho, assoc=alpha)


@pytest.mark.parametrize("make", LIBRARY)
def test_library_structures_are_coherent(make):
    assert check_monoidal(make()).passed


@pytest.mark.parametrize("n", [2, 3])
def test_deloop_coherence_matches_group_oracle(n):
    """For a delooped abelian group with constant coherence data, the triangle
    reads λ + α = ρ and the pentagon 3α = 2α, so validity is α = 0 and λ = ρ."""
    els = [str(k) for k in range(n)]
    valid = 0
    for alpha, lam, rho in cart(els, repeat=3):
        r = check_monoidal(zn(n, alpha, lam, rho))
        assert r.passed == (alpha == "0" and lam == rho), (alpha, lam, rho, r.failed_axioms())
        valid += r.passed
    assert valid == n


def test_associator_mutation_fails_triangle_and_pentagon():
    r = check_monoidal(zn(2, "1", "0", "0"))
    assert set(r.failed_axioms()) == {"monoidal/triangle", "monoidal/pentagon"}
    assert r.witnesses("monoidal/pentagon") == [(STAR,) * 4]


def test_strictness():
    assert is_strict(v_z2()) and is_strict(v_bool())
    assert not is_strict(v_z2_twisted_units()) and not is_strict(v_omega())


def test_omega_associator_is_non_trivial():
    v = v_omega()
    assert v.alpha("1", "1", "1") == "t1"
    assert v.inv("t1") == "t1"
    assert v.fold0(["1", "1", "1"]) == "1"
    with pytest.raises(IllTyped):
        v.comp("t0", "t1")


def test_max_with_top_unit_has_mistyped_unitor():
    v = v_bool()
    with pytest.raises(ValueError):
        poset_monoidal(v.base, lambda a, b: "1" if "0" in (a, b) else "0", "1", "bad")
    w = poset_monoidal(v.base, max, "0", "Vmax")
    assert check_monoidal(w).passed


@pytest.mark.parametrize("src,tgt", list(cart([("0", "0"), ("1", "1")], repeat=2)))
def test_monoidal_functor_matches_group_oracle(src, tgt):
    """Identity-on-arrows functors between delooped Z/2 structures: the hexagon forces
    α = α′ and the unit axioms read λ + μ + ε = λ′ and ρ + μ + ε = ρ′."""
    V, W = zn(2, "0", *src), zn(2, "0", *tgt)
    F = identity_functor(V.base)
    for eps, mu in cart("01", repeat=2):
        d = make_monoidal_functor(V, W, F, eps, {(STAR, STAR): mu})
        expect = all((int(x) + int(mu) + int(eps)) % 2 == int(y) for x, y in zip(src, tgt))
        assert check_monoidal_functor(d).passed == expect


@pytest.mark.parametrize("make", LIBRARY)
def test_identity_monoidal_functor_and_composition(make):
    v = make()
    i = identity_monoidal_functor(v)
    assert check_monoidal_functor(i).passed
    ii = compose_monoidal_functors(i, i)
    assert check_monoidal_functor(ii).passed
    assert ii.eps == i.eps and ii.mu == i.mu
    assert check_monoidal_nat(MonoidalNatData(identity_nat(i.f), i, i)).passed


def test_monoidal_nat_matches_group_oracle():
    """Between F = (ε 0, μ 0) and G = (ε 1, μ 1) the tensor axiom reads
    μ_G + 2n = n + μ_F and the unit axiom n + ε_F = ε_G; both force n = 1."""
    V = zn(2, "0", "0", "0")
    F = make_monoidal_functor(V, V, identity_functor(V.base), "0", {(STAR, STAR): "0"})
    G = make_monoidal_functor(V, V, identity_functor(V.base), "1", {(STAR, STAR): "1"})
    assert check_monoidal_functor(G).passed
    for k in "01":
        r = check_monoidal_nat(MonoidalNatData(make_nat(F.f, G.f, {STAR: k}), F, G))
        assert r.passed == (k == "1")
        if k == "0":
            assert r.failed_families() == ["mnat"]
