"""The line-oriented .icat format: parsing, resolution and printing.

A document is a sequence of declarations. Single-line kinds:

    set NAME = a b c
    family NAME = S1 S2 S3

Block kinds open with a header line and close with `end`; each body line is
one table row, e.g.

    category C
      objects a b
      arrow f : a -> b
      id a = ida
      comp f ida = f
    end

Atoms are whitespace-free tokens; tuples are written ⟨a,b⟩ (or <a,b>).
"""

import re
from typing import NamedTuple

from .ambient import DomainMismatch, FiniteMap, FiniteSet, akey, fmt_atom, is_atom
from .enriched import make_enriched, make_enriched_functor, make_enriched_nat
from .internal_cat import EndpointMismatch, MalformedData, make_category, make_functor, make_nat
from .monoidal import MonoidalNatData, make_monoidal, make_monoidal_functor
from .multicat import Path, TabulatedMulticat, _Index


class SpecError(Exception):
    def __init__(self, message, line=0, col=0, token=""):
        super().__init__(message)
        self.message, self.line, self.col, self.token = message, line, col, token

    def __str__(self):
        where = f"line {self.line}, column {self.col}" if self.line else "input"
        tok = f" near {self.token!r}" if self.token else ""
        return f"{where}: {self.message}{tok}"


class SpecSyntaxError(SpecError):
    pass


class UnresolvedReference(SpecError):
    pass


class SchemaViolation(SpecError):
    pass


class TargetNotFound(SpecError):
    pass


class KindMismatch(SpecError):
    pass


# header shapes: "N" is a reference to an earlier declaration, other strings are literals
HEADERS = {
    "map": [":", "N", "->", "N"],
    "category": [],
    "monoidal": ["on", "N"],
    "enriched": ["over", "N"],
    "functor": [":", "N", "->", "N"],
    "nat": [":", "N", "=>", "N"],
    "monoidal-functor": [":", "N", "->", "N", "via", "N"],
    "monoidal-nat": [":", "N", "=>", "N", "via", "N"],
    "enriched-functor": [":", "N", "->", "N"],
    "enriched-nat": [":", "N", "=>", "N"],
    "multicat": [],
    "discrete-enriched": ["over", "N"],
}

# kinds each header reference must have, in order
REF_KINDS = {
    "map": [("set",), ("set",)],
    "monoidal": [("category",)],
    "enriched": [("monoidal",)],
    "functor": [("category",), ("category",)],
    "nat": [("functor",), ("functor",)],
    "monoidal-functor": [("monoidal",), ("monoidal",), ("functor",)],
    "monoidal-nat": [("monoidal-functor",), ("monoidal-functor",), ("nat",)],
    "enriched-functor": [("enriched",), ("enriched",)],
    "enriched-nat": [("enriched-functor",), ("enriched-functor",)],
    "discrete-enriched": [("monoidal",)],
}

# row shapes: "A" atom, "A*" remaining atoms, "L" bracketed atom list, others literal
ROWS = {
    "map": {"->": ["A", "->", "A"]},
    "category": {"objects": ["A*"], "arrow": ["A", ":", "A", "->", "A"], "id": ["A", "=", "A"],
                 "comp": ["A", "A", "=", "A"]},
    "monoidal": {"unit": ["A"], "tensor0": ["A", "A", "=", "A"], "tensor1": ["A", "A", "=", "A"],
                 "assoc": ["A", "A", "A", "=", "A"], "lunit": ["A", "=", "A"], "runit": ["A", "=", "A"]},
    "enriched": {"objects": ["A*"], "hom": ["A", "A", "=", "A"], "comp": ["A", "A", "A", "=", "A"],
                 "ident": ["A", "=", "A"]},
    "functor": {"obj": ["A", "=", "A"], "arr": ["A", "=", "A"]},
    "nat": {"at": ["A", "=", "A"]},
    "monoidal-functor": {"eps": ["=", "A"], "mu": ["A", "A", "=", "A"]},
    "monoidal-nat": {},
    "enriched-functor": {"obj": ["A", "=", "A"], "arr": ["A", "A", "=", "A"]},
    "enriched-nat": {"at": ["A", "=", "A"]},
    "multicat": {"vertex": ["A*"], "edge": ["A", ":", "A", "->", "A"],
                 "arrow": ["A", ":", "A", "L", "A", "=>", "A"], "mid": ["A", "=", "A"],
                 "comp": ["A", "L", "=", "A"]},
    "discrete-enriched": {"objects": ["A*"], "hom": ["A", "A", "=", "A"], "comp": ["A", "A", "A", "=", "A"],
                          "ident": ["A", "=", "A"]},
}

KINDS = ("set", "family") + tuple(HEADERS)
LITERALS = {"=", "->", "=>", ":", "[", "]"}
NAME = re.compile(r"[A-Za-z_][\w.'\-]*$")
TOKEN = re.compile(r"\[|\]|[^\s\[\]]+")
RESERVED = set("⟨⟩<>,[]#") | set(" \t")


class Row(NamedTuple):
    key: str
    fields: tuple


class Decl:
    """One named declaration. Equality ignores source positions."""

    def __init__(self, kind, name, refs=(), rows=(), line=0, positions=None):
        self.kind, self.name = kind, name
        self.refs = tuple(refs)
        self.rows = tuple(rows)
        self.line = line
        self.positions = positions or {}

    def key(self):
        return (self.kind, self.name, self.refs, self.rows)

    def __eq__(self, other):
        return isinstance(other, Decl) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Decl({self.kind} {self.name})"


class SpecDocument:
    def __init__(self, decls, objects):
        self.decls = list(decls)
        self.objects = dict(objects)
        self.kinds = {d.name: d.kind for d in self.decls}

    def __eq__(self, other):
        return isinstance(other, SpecDocument) and [d.key() for d in self.decls] == [d.key() for d in other.decls]

    def __len__(self):
        return len(self.decls)

    def names(self, *kinds):
        return [d.name for d in self.decls if not kinds or d.kind in kinds]

    def decl(self, name):
        for d in self.decls:
            if d.name == name:
                return d
        raise TargetNotFound(f"no declaration named {name!r}", token=name)

    def get(self, name, *kinds):
        d = self.decl(name)
        if kinds and d.kind not in kinds:
            raise KindMismatch(f"{name!r} is a {d.kind}, expected {' or '.join(kinds)}", d.line, 1, name)
        return self.objects[name]


# ---------------------------------------------------------------- lexing


def parse_atom(tok, line=0, col=0):
    s = tok.replace("<", "⟨").replace(">", "⟩") if tok not in ("->", "=>") else tok
    pos = 0

    def atom():
        nonlocal pos
        if pos < len(s) and s[pos] == "⟨":
            pos += 1
            items = []
            if pos < len(s) and s[pos] == "⟩":
                pos += 1
                return ()
            while True:
                items.append(atom())
                if pos < len(s) and s[pos] == ",":
                    pos += 1
                    continue
                if pos < len(s) and s[pos] == "⟩":
                    pos += 1
                    return tuple(items)
                raise SpecSyntaxError("unterminated tuple", line, col + pos, tok)
        start = pos
        while pos < len(s) and s[pos] not in "⟨⟩,":
            pos += 1
        if pos == start:
            raise SpecSyntaxError("empty atom", line, col + pos, tok)
        return s[start:pos]
    a = atom()
    if pos != len(s):
        raise SpecSyntaxError("trailing characters after atom", line, col + pos, tok)
    return a


def _lex(text):
    for n, raw in enumerate(text.splitlines(), start=1):
        toks = []
        for m in TOKEN.finditer(raw):
            if m.group().startswith("#"):
                break
            toks.append((m.group(), m.start() + 1))
        if toks:
            yield n, toks


def _match(shape, toks, line, kind_literals=False):
    """Match tokens against a row or header shape; returns the captured fields."""
    out = []
    k = 0
    for item in shape:
        if item == "A*":
            out.append(tuple(parse_atom(t, line, c) for t, c in toks[k:]))
            k = len(toks)
            continue
        if k >= len(toks):
            col = toks[-1][1] + len(toks[-1][0]) if toks else 1
            raise SpecSyntaxError(f"expected {_describe(item)}", line, col)
        tok, col = toks[k]
        if item == "A":
            if tok in LITERALS:
                raise SpecSyntaxError("expected an atom", line, col, tok)
            out.append(parse_atom(tok, line, col))
            k += 1
        elif item == "N":
            if not NAME.match(tok):
                raise SpecSyntaxError("expected a declaration name", line, col, tok)
            out.append(tok)
            k += 1
        elif item == "L":
            if tok != "[":
                raise SpecSyntaxError("expected '['", line, col, tok)
            k += 1
            items = []
            while k < len(toks) and toks[k][0] != "]":
                t, c = toks[k]
                if t in LITERALS:
                    raise SpecSyntaxError("expected an atom or ']'", line, c, t)
                items.append(parse_atom(t, line, c))
                k += 1
            if k >= len(toks):
                raise SpecSyntaxError("unterminated list", line, col, tok)
            k += 1
            out.append(tuple(items))
        else:
            if tok != item:
                raise SpecSyntaxError(f"expected {item!r}", line, col, tok)
            k += 1
    if k < len(toks):
        raise SpecSyntaxError("unexpected token", line, toks[k][1], toks[k][0])
    return out


def _describe(item):
    return {"A": "an atom", "N": "a declaration name", "L": "'['"}.get(item, repr(item))


# ---------------------------------------------------------------- parsing


def parse_decls(text):
    decls = []
    lines = list(_lex(text))
    i = 0
    while i < len(lines):
        n, toks = lines[i]
        kw, col = toks[0]
        if kw not in KINDS:
            raise SpecSyntaxError("expected a declaration keyword", n, col, kw)
        if len(toks) < 2:
            raise SpecSyntaxError("expected a declaration name", n, col + len(kw))
        name, ncol = toks[1]
        if not NAME.match(name):
            raise SpecSyntaxError("invalid declaration name", n, ncol, name)
        if kw in ("set", "family"):
            if len(toks) < 3 or toks[2][0] != "=":
                raise SpecSyntaxError("expected '='", n, toks[2][1] if len(toks) > 2 else ncol + len(name),
                                      toks[2][0] if len(toks) > 2 else "")
            if kw == "set":
                elems = _match(["A*"], toks[3:], n)[0]
                decls.append(Decl(kw, name, (), [Row("elems", elems)], n,
                                  {"refs": [], "rows": [(n, toks[3][1] if len(toks) > 3 else 1)]}))
            else:
                refs = []
                for t, c in toks[3:]:
                    if not NAME.match(t):
                        raise SpecSyntaxError("expected a set name", n, c, t)
                    refs.append(t)
                decls.append(Decl(kw, name, refs, (), n, {"refs": [c for _, c in toks[3:]], "rows": []}))
            i += 1
            continue
        refs = _match(HEADERS[kw], toks[2:], n)
        ref_cols = [c for (t, c), item in zip(toks[2:], HEADERS[kw]) if item == "N"]
        rows, pos = [], []
        shapes = ROWS[kw]
        i += 1
        closed = False
        while i < len(lines):
            m, rtoks = lines[i]
            i += 1
            if rtoks[0][0] == "end":
                if len(rtoks) > 1:
                    raise SpecSyntaxError("unexpected token after 'end'", m, rtoks[1][1], rtoks[1][0])
                closed = True
                break
            if rtoks[0][0] in KINDS and rtoks[0][0] not in shapes and len(rtoks) > 1 and NAME.match(rtoks[1][0]):
                raise SpecSyntaxError(f"missing 'end' for {kw} {name}", m, rtoks[0][1], rtoks[0][0])
            if kw == "map":
                fields = _match(shapes["->"], rtoks, m)
                rows.append(Row("->", tuple(fields)))
            else:
                key, kcol = rtoks[0]
                if key not in shapes:
                    raise SpecSyntaxError(f"unknown row kind for {kw}", m, kcol, key)
                rows.append(Row(key, tuple(_match(shapes[key], rtoks[1:], m))))
            pos.append((m, rtoks[0][1]))
        if not closed:
            raise SpecSyntaxError(f"missing 'end' for {kw} {name}", n, col, kw)
        decls.append(Decl(kw, name, refs, rows, n, {"refs": ref_cols, "rows": pos}))
    return decls


def parse_spec(text):
    """Parse and resolve a document; raises SpecError subclasses with locations."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SpecSyntaxError(f"input is not UTF-8 ({e.reason})") from None
    return resolve(parse_decls(text))


def resolve(decls):
    objects = {}
    kinds = {}
    for d in decls:
        if d.name in kinds:
            raise SchemaViolation(f"duplicate declaration {d.name!r}", d.line, 1, d.name)
        expected = REF_KINDS.get(d.kind, [("set",)] * len(d.refs) if d.kind == "family" else [])
        for k, (ref, want) in enumerate(zip(d.refs, expected)):
            col = d.positions.get("refs", [])[k] if k < len(d.positions.get("refs", [])) else 1
            if ref not in kinds:
                raise UnresolvedReference(f"undeclared name {ref!r}", d.line, col, ref)
            if kinds[ref] not in want:
                raise SchemaViolation(f"{ref!r} is a {kinds[ref]}, expected {' or '.join(want)}", d.line, col, ref)
        try:
            objects[d.name] = BUILDERS[d.kind](d, [objects[r] for r in d.refs])
        except SpecError:
            raise
        except (MalformedData, DomainMismatch, EndpointMismatch, ValueError, TypeError, KeyError) as e:
            raise SchemaViolation(f"{d.kind} {d.name}: {e}", d.line, 1, d.name) from None
        kinds[d.name] = d.kind
    return SpecDocument(decls, objects)


# ---------------------------------------------------------------- builders


class _Rows:
    """Helpers for reading table rows with located errors."""

    def __init__(self, d):
        self.d = d

    def at(self, k):
        pos = self.d.positions.get("rows", [])
        return pos[k] if k < len(pos) else (self.d.line, 1)

    def fail(self, k, msg, token=""):
        line, col = self.at(k)
        raise SchemaViolation(msg, line, col, fmt_atom(token) if token != "" else "")

    def table(self, key, nargs, domain=None, values=None, label=None):
        """rows `key a1..an = v` as a dict; checks duplicates, domain and totality."""
        out = {}
        label = label or key
        if domain is not None:
            domain = set(domain)
        for k, r in enumerate(self.d.rows):
            if r.key != key:
                continue
            args = r.fields[:nargs]
            arg = args[0] if nargs == 1 else tuple(args)
            val = r.fields[-1]
            if arg in out:
                self.fail(k, f"duplicate {label} entry", arg)
            if domain is not None and arg not in domain:
                self.fail(k, f"{label} entry outside its domain", arg)
            if values is not None and val not in values:
                self.fail(k, f"{label} value is not declared", val)
            out[arg] = val
        if domain is not None:
            missing = sorted((a for a in domain if a not in out), key=akey)
            if missing:
                raise SchemaViolation(f"{label} table is not total; missing {fmt_atom(missing[0])}",
                                      self.d.line, 1, self.d.name)
        return out

    def single(self, key):
        found = [(k, r) for k, r in enumerate(self.d.rows) if r.key == key]
        if not found:
            raise SchemaViolation(f"missing {key} row", self.d.line, 1, self.d.name)
        if len(found) > 1:
            self.fail(found[1][0], f"duplicate {key} row")
        return found[0][1].fields

    def collect(self, key):
        out = []
        for k, r in enumerate(self.d.rows):
            if r.key == key:
                for a in r.fields[0]:
                    if a in out:
                        self.fail(k, f"duplicate {key}", a)
                    out.append(a)
        return out


def _build_set(d, refs):
    return FiniteSet(d.rows[0].fields, name=d.name)


def _build_family(d, refs):
    if len(set(d.refs)) != len(d.refs):
        raise SchemaViolation("family lists a set twice", d.line, 1, d.name)
    return list(refs)


def _build_map(d, refs):
    src, tgt = refs
    t = _Rows(d).table("->", 1, src.elems, tgt, "map")
    return FiniteMap(src, tgt, t)


def _build_category(d, refs):
    R = _Rows(d)
    objects = R.collect("objects")
    arrows = {}
    for k, r in enumerate(d.rows):
        if r.key == "arrow":
            f, s, t = r.fields
            if f in arrows:
                R.fail(k, "duplicate arrow", f)
            for e in (s, t):
                if e not in objects:
                    R.fail(k, "arrow endpoint is not a declared object", e)
            arrows[f] = (s, t)
    ids = R.table("id", 1, objects, arrows, "id")
    composable = [(g, f) for g in arrows for f in arrows if arrows[g][0] == arrows[f][1]]
    comp = R.table("comp", 2, composable, arrows, "comp")
    return make_category(objects, arrows, ids, comp, d.name)


def _build_monoidal(d, refs):
    (c,) = refs
    R = _Rows(d)
    (unit,) = R.single("unit")
    if unit not in c.obj:
        raise SchemaViolation("unit is not an object", d.line, 1, fmt_atom(unit))
    O, A = c.obj.elems, c.arr.elems
    t0 = R.table("tensor0", 2, {(a, b) for a in O for b in O}, c.obj, "tensor0")
    t1 = R.table("tensor1", 2, {(f, g) for f in A for g in A}, c.arr, "tensor1")
    assoc = R.table("assoc", 3, {(a, b, e) for a in O for b in O for e in O}, c.arr, "assoc")
    lunit = R.table("lunit", 1, set(O), c.arr, "lunit")
    runit = R.table("runit", 1, set(O), c.arr, "runit")
    return make_monoidal(c, t0, t1, unit, assoc, lunit, runit, d.name)


def _build_enriched(d, refs):
    (v,) = refs
    R = _Rows(d)
    objects = R.collect("objects")
    X = set(objects)
    hom = R.table("hom", 2, {(a, b) for a in X for b in X}, v.base.obj, "hom")
    comp = R.table("comp", 3, {(a, b, c) for a in X for b in X for c in X}, v.base.arr, "comp")
    ident = R.table("ident", 1, X, v.base.arr, "ident")
    return make_enriched(v, objects, hom, comp, ident, d.name)


def _build_discrete(d, refs):
    raise SchemaViolation(
        "discrete enriched categories are not constructible in general: the discrete hom "
        "X×X → V0 would need a decidable diagonal with I on it and an initial object elsewhere, "
        "which an arbitrary internal monoidal category does not provide; declare the hom table "
        "explicitly with 'enriched'", d.line, 1, d.name)


def _build_functor(d, refs):
    a, b = refs
    R = _Rows(d)
    f0 = R.table("obj", 1, a.obj.elems, b.obj, "obj")
    f1 = R.table("arr", 1, a.arr.elems, b.arr, "arr")
    return make_functor(a, b, f0, f1, d.name)


def _build_nat(d, refs):
    F, G = refs
    if F.dom != G.dom or F.cod != G.cod:
        raise SchemaViolation("functors are not parallel", d.line, 1, d.name)
    comp = _Rows(d).table("at", 1, F.dom.obj.elems, F.cod.arr, "component")
    return make_nat(F, G, comp, d.name)


def _build_monoidal_functor(d, refs):
    V, W, F = refs
    if F.dom != V.base or F.cod != W.base:
        raise SchemaViolation("underlying functor does not run between the bases", d.line, 1, d.name)
    R = _Rows(d)
    (eps,) = R.single("eps")
    if eps not in W.base.arr:
        raise SchemaViolation("eps is not an arrow", d.line, 1, fmt_atom(eps))
    O = V.base.obj.elems
    mu = R.table("mu", 2, {(a, b) for a in O for b in O}, W.base.arr, "mu")
    return make_monoidal_functor(V, W, F, eps, mu, d.name)


def _build_monoidal_nat(d, refs):
    F, G, n = refs
    return MonoidalNatData(n, F, G, d.name)


def _build_enriched_functor(d, refs):
    X, Y = refs
    if X.v != Y.v:
        raise SchemaViolation("enriched categories over different bases", d.line, 1, d.name)
    R = _Rows(d)
    f0 = R.table("obj", 1, X.carrier.elems, Y.carrier, "obj")
    f1 = R.table("arr", 2, set(X.hom.dom.elems), X.v.base.arr, "arr")
    return make_enriched_functor(X, Y, f0, f1, d.name)


def _build_enriched_nat(d, refs):
    F, G = refs
    if F.dom != G.dom or F.cod != G.cod:
        raise SchemaViolation("enriched functors are not parallel", d.line, 1, d.name)
    comp = _Rows(d).table("at", 1, F.dom.carrier.elems, F.dom.v.base.arr, "component")
    return make_enriched_nat(F, G, comp, d.name)


def _build_multicat(d, refs):
    R = _Rows(d)
    vertices = R.collect("vertex")
    edges, arrows = {}, {}
    for k, r in enumerate(d.rows):
        if r.key == "edge":
            e, s, t = r.fields
            if e in edges:
                R.fail(k, "duplicate edge", e)
            for x in (s, t):
                if x not in vertices:
                    R.fail(k, "edge endpoint is not a declared vertex", x)
            edges[e] = (s, t)
    for k, r in enumerate(d.rows):
        if r.key == "arrow":
            a, s, path, t, c = r.fields
            if a in arrows:
                R.fail(k, "duplicate arrow", a)
            for x in (s, t):
                if x not in vertices:
                    R.fail(k, "arrow endpoint is not a declared vertex", x)
            for e in path + (c,):
                if e not in edges:
                    R.fail(k, "arrow mentions an undeclared edge", e)
            arrows[a] = (Path(s, path, t), c)
    mids = R.table("mid", 1, list(edges), arrows, "mid")
    comps = {}
    for k, r in enumerate(d.rows):
        if r.key == "comp":
            a, inners, out = r.fields
            key = (a, inners)
            if key in comps:
                R.fail(k, "duplicate comp entry", a)
            for x in (a,) + inners + (out,):
                if x not in arrows:
                    R.fail(k, "comp mentions an undeclared arrow", x)
            comps[key] = out
    m = TabulatedMulticat(vertices, edges, arrows, mids, comps, d.name)
    ix = _Index(m)
    for key in ix.configurations(m.bound):
        if key not in comps:
            a, inners = key
            raise SchemaViolation(f"comp table is not total; missing {fmt_atom(a)} "
                                  f"[{' '.join(fmt_atom(q) for q in inners)}]", d.line, 1, d.name)
    configs = set(ix.configurations(m.bound))
    for k, r in enumerate(d.rows):
        if r.key == "comp" and (r.fields[0], r.fields[1]) not in configs:
            R.fail(k, "comp entry for a non-composable configuration", r.fields[0])
    return m


BUILDERS = {
    "set": _build_set,
    "family": _build_family,
    "map": _build_map,
    "category": _build_category,
    "monoidal": _build_monoidal,
    "enriched": _build_enriched,
    "discrete-enriched": _build_discrete,
    "functor": _build_functor,
    "nat": _build_nat,
    "monoidal-functor": _build_monoidal_functor,
    "monoidal-nat": _build_monoidal_nat,
    "enriched-functor": _build_enriched_functor,
    "enriched-nat": _build_enriched_nat,
    "multicat": _build_multicat,
}


# ---------------------------------------------------------------- printing


def _atom_text(a):
    if isinstance(a, str):
        if not a or a in LITERALS or a in ("end", "->", "=>") or any(ch in RESERVED or ch.isspace() for ch in a):
            raise ValueError(f"atom {a!r} cannot be written in the .icat format")
        return a
    if not is_atom(a):
        raise ValueError(f"not an atom: {a!r}")
    return "⟨" + ",".join(_atom_text(x) for x in a) + "⟩"


def _field_text(item, value):
    if item == "A*":
        return " ".join(_atom_text(a) for a in value)
    if item == "L":
        return "[" + " ".join(_atom_text(a) for a in value) + "]"
    if item == "N":
        return value
    return _atom_text(value)


def _row_text(kind, row):
    shape = ROWS[kind]["->" if kind == "map" else row.key]
    parts = [] if kind == "map" else [row.key]
    k = 0
    for item in shape:
        if item in ("A", "A*", "L"):
            parts.append(_field_text(item, row.fields[k]))
            k += 1
        else:
            parts.append(item)
    return " ".join(p for p in parts if p != "")


def print_decl(d):
    if d.kind == "set":
        return " ".join(["set", d.name, "="] + [_atom_text(a) for a in d.rows[0].fields])
    if d.kind == "family":
        return " ".join(["family", d.name, "="] + list(d.refs))
    head = [d.kind, d.name]
    refs = iter(d.refs)
    for item in HEADERS[d.kind]:
        head.append(next(refs) if item == "N" else item)
    lines = [" ".join(head)]
    lines += ["  " + _row_text(d.kind, r) for r in d.rows]
    lines.append("end")
    return "\n".join(lines)


def print_spec(doc):
    decls = doc.decls if isinstance(doc, SpecDocument) else doc
    return "\n\n".join(print_decl(d) for d in decls) + "\n"


# ---------------------------------------------------------------- emitting from library objects


def _sorted_rows(rows):
    return sorted(rows, key=lambda r: (r.key, akey(r.fields)))


def emit_set(name, s):
    return Decl("set", name, (), [Row("elems", tuple(s.elems))])


def emit_map(name, m, dom, cod):
    return Decl("map", name, (dom, cod), [Row("->", (x, y)) for x, y in m.items()])


def emit_category(name, c):
    rows = [Row("objects", (tuple(c.obj.elems),))]
    rows += [Row("arrow", (f, c.src(f), c.tgt(f))) for f in c.arr]
    rows += [Row("id", (a, c.identity(a))) for a in c.obj]
    rows += _sorted_rows(Row("comp", (g, f, h)) for (g, f), h in c.comp.items())
    return Decl("category", name, (), rows)


def emit_monoidal(name, v, cat):
    O, A = v.base.obj.elems, v.base.arr.elems
    rows = [Row("unit", (v.I,))]
    rows += [Row("tensor0", (a, b, v.t0(a, b))) for a in O for b in O]
    rows += [Row("tensor1", (f, g, v.t1(f, g))) for f in A for g in A]
    rows += [Row("assoc", (a, b, c, v.alpha(a, b, c))) for a in O for b in O for c in O]
    rows += [Row("lunit", (a, v.lam(a))) for a in O]
    rows += [Row("runit", (a, v.rho(a))) for a in O]
    return Decl("monoidal", name, (cat,), rows)


def emit_enriched(name, x, v):
    X = x.carrier.elems
    rows = [Row("objects", (tuple(X),))]
    rows += [Row("hom", (a, b, x.h(a, b))) for a in X for b in X]
    rows += [Row("comp", (a, b, c, x.c(a, b, c))) for a in X for b in X for c in X]
    rows += [Row("ident", (a, x.e(a))) for a in X]
    return Decl("enriched", name, (v,), rows)


def emit_functor(name, fn, dom, cod):
    rows = [Row("obj", (a, fn.f0(a))) for a in fn.dom.obj]
    rows += [Row("arr", (f, fn.f1(f))) for f in fn.dom.arr]
    return Decl("functor", name, (dom, cod), rows)


def emit_nat(name, n, src, tgt):
    return Decl("nat", name, (src, tgt), [Row("at", (a, n(a))) for a in n.src_f.dom.obj])


def emit_enriched_functor(name, fn, dom, cod):
    X = fn.dom.carrier.elems
    rows = [Row("obj", (a, fn.F0(a))) for a in X]
    rows += [Row("arr", (a, b, fn.F1(a, b))) for a in X for b in X]
    return Decl("enriched-functor", name, (dom, cod), rows)


def emit_enriched_nat(name, n, src, tgt):
    return Decl("enriched-nat", name, (src, tgt), [Row("at", (a, n(a))) for a in n.src_f.dom.carrier])


def emit_multicat(name, m):
    edges, arrows, mids, comps = m.tables()
    rows = [Row("vertex", (tuple(m.vertices),))]
    rows += [Row("edge", (e, s, t)) for e, (s, t) in sorted(edges.items(), key=lambda kv: akey(kv[0]))]
    rows += [Row("arrow", (a, p.start, p.edges, p.end, c))
             for a, (p, c) in sorted(arrows.items(), key=lambda kv: akey(kv[0]))]
    rows += [Row("mid", (e, a)) for e, a in sorted(mids.items(), key=lambda kv: akey(kv[0]))]
    rows += _sorted_rows(Row("comp", (a, inners, out)) for (a, inners), out in comps.items())
    return Decl("multicat", name, (), rows)
