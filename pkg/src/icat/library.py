"""Standard small monoidal categories and enriched categories used by the corpus."""

from itertools import product as _cartesian

from .enriched import make_enriched
from .internal_cat import delooping, make_category
from .monoidal import make_monoidal, strict_coherence


def v_bool():
    """The poset 0 ≤ 1 with ⊗ = min and unit 1."""
    base = make_category(
        ["0", "1"],
        {"id0": ("0", "0"), "id1": ("1", "1"), "u": ("0", "1")},
        {"0": "id0", "1": "id1"},
        {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("u", "id0"): "u", ("id1", "u"): "u"},
        "Bool",
    )
    return poset_monoidal(base, min, "1", "Vbool")


def poset_monoidal(base, op, unit, name):
    """Strict monoidal structure on a thin category from a monotone operation on objects."""
    objs = base.obj.elems
    t0 = {(a, b): op(a, b) for a in objs for b in objs}
    t1 = {}
    for f, g in _cartesian(base.arr.elems, repeat=2):
        s = t0[(base.src(f), base.src(g))]
        t = t0[(base.tgt(f), base.tgt(g))]
        hs = base.hom(s, t)
        if not hs:
            raise ValueError("operation is not monotone")
        t1[(f, g)] = hs[0]
    assoc, lunit, runit = strict_coherence(base, t0, unit)
    return make_monoidal(base, t0, t1, unit, assoc, lunit, runit, name)


def commutative_deloop(elements, mult, unit, name, lunit=None, runit=None, assoc=None):
    """One-object monoidal category of a commutative monoid; ⊗ on arrows is the product."""
    base = delooping(elements, mult, unit, name)
    (star,) = base.obj.elems
    t0 = {(star, star): star}
    t1 = {(f, g): mult(f, g) for f in elements for g in elements}
    return make_monoidal(base, t0, t1, star,
                         {(star, star, star): assoc or unit},
                         {star: lunit or unit}, {star: runit or unit}, name)


def _z2(g, f):
    return "1" if (g == "1") != (f == "1") else "0"


def v_z2():
    """Delooped Z/2, strict."""
    return commutative_deloop(["0", "1"], _z2, "0", "Z2")


def v_z2_twisted_units():
    """Delooped Z/2 with both unitors the non-identity element."""
    return commutative_deloop(["0", "1"], _z2, "0", "Z2u", lunit="1", runit="1")


def v_meet():
    """Delooped meet monoid {e, s} with s·s = s."""
    def mult(g, f):
        return "s" if "s" in (g, f) else "e"
    return commutative_deloop(["e", "s"], mult, "e", "Meet")


def _w(g, k):
    return f"{'et'[k]}{g}"


def v_omega():
    """Z/2-graded lines with the non-trivial associator ω(a,b,c) = abc."""
    arrows = {}
    for g in (0, 1):
        for k in (0, 1):
            arrows[_w(g, k)] = (str(g), str(g))
    comp = {}
    for g in (0, 1):
        for k in (0, 1):
            for l in (0, 1):
                comp[(_w(g, k), _w(g, l))] = _w(g, (k + l) % 2)
    base = make_category(["0", "1"], arrows, {"0": _w(0, 0), "1": _w(1, 0)}, comp, "Graded")
    t0 = {(str(a), str(b)): str((a + b) % 2) for a in (0, 1) for b in (0, 1)}
    t1 = {}
    for g, k, h, l in _cartesian((0, 1), repeat=4):
        t1[(_w(g, k), _w(h, l))] = _w((g + h) % 2, (k + l) % 2)
    assoc = {(str(a), str(b), str(c)): _w((a + b + c) % 2, a * b * c)
             for a, b, c in _cartesian((0, 1), repeat=3)}
    lunit = {"0": _w(0, 0), "1": _w(1, 0)}
    return make_monoidal(base, t0, t1, "0", assoc, lunit, dict(lunit), "Omega")


def thin_enriched(v, objects, hom, name=""):
    """Complete a hom table over a thin V with the only possible comp and ident.

    Where no arrow of the required type exists an arrow out of the right source
    is used instead, so the failure shows up as a typing violation.
    """
    base = v.base

    def pick(s, t):
        found = base.hom(s, t)
        if found:
            return found[0]
        return (base.arrows_from(s) or base.arr.elems)[0]
    comp = {(a, b, c): pick(v.t0(hom[(b, c)], hom[(a, b)]), hom[(a, c)])
            for a, b, c in _cartesian(objects, repeat=3)}
    ident = {a: pick(v.I, hom[(a, a)]) for a in objects}
    return make_enriched(v, objects, hom, comp, ident, name)
