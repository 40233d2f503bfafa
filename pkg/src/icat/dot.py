"""Stable Graphviz DOT export: nodes and edges in canonical atom order."""

from .ambient import akey, fmt_atom


def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _graph(name, nodes, edges):
    out = [f"digraph {_q(name or 'G')} {{", "  rankdir=LR;", "  node [shape=plaintext];"]
    for n in sorted(nodes, key=akey):
        out.append(f"  {_q(fmt_atom(n))};")
    for s, t, label in sorted(edges, key=lambda e: (akey(e[0]), akey(e[1]), e[2])):
        out.append(f"  {_q(fmt_atom(s))} -> {_q(fmt_atom(t))} [label={_q(label)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def category_dot(c, name="", identities=False):
    ids = {c.identity(a) for a in c.obj}
    edges = [(c.src(f), c.tgt(f), fmt_atom(f)) for f in c.arr if identities or f not in ids]
    return _graph(name or c.name, c.obj.elems, edges)


def enriched_dot(x, name=""):
    X = x.carrier.elems
    edges = [(a, b, fmt_atom(x.h(a, b))) for a in X for b in X]
    return _graph(name or x.name, X, edges)


def multicat_dot(m, name=""):
    """The underlying graph C0, with each edge labelled by itself and its unary arrows."""
    unary = {}
    for a in m.arrows():
        if m.arity(a) == 1:
            unary.setdefault(m.cod(a), []).append(a)
    edges = []
    for e in m.edges():
        s, t = m.edge_ends(e)
        arrows = " ".join(fmt_atom(a) for a in sorted(unary.get(e, []), key=akey))
        edges.append((s, t, f"{fmt_atom(e)}: {arrows}" if arrows else fmt_atom(e)))
    return _graph(name or getattr(m, "name", ""), m.vertices, edges)


def total_dot(tc, name=""):
    """The total category of a Grothendieck construction, without identities."""
    return category_dot(tc.total, name or "total")
