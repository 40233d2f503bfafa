"""The `icat` command line: load an .icat document, run checks, emit reports."""

import argparse
import sys

from .ambient import AmbientError, FiniteMap, FiniteSet, fmt_atom, terminal
from .dot import category_dot, enriched_dot, multicat_dot, total_dot
from .enriched import (check_enriched_category, check_enriched_functor, check_enriched_nat,
                       underlying_category, underlying_functor, underlying_nat)
from .externalization import (IncoherentFiberData, FamilyNotProductClosed, MalformedFamily,
                              check_grothendieck, check_monoidal_grothendieck, enriched_fiber,
                              fiber, fiber_iso_terminal, fiber_monoidal, grothendieck,
                              monoidal_grothendieck, standard_family, underlying_commute_check)
from .internal_cat import EndpointMismatch, MalformedData, check_category, check_functor, check_nat
from .monoidal import IllTyped, check_monoidal, check_monoidal_functor, check_monoidal_nat
from .multicat import (BoundExceeded, InvalidMulticatData, check_fc_multicat, check_multicat_map,
                       default_bound, multicat_functor_roundtrip, multicat_roundtrip, to_multicat)
from .parser import KindMismatch, SpecError, TargetNotFound, parse_spec
from .report import CheckReport, fmt_witness

REPORT_HEADER = "icat-report 1"

CHECKERS = {
    "category": lambda o, n: check_category(o, n),
    "monoidal": lambda o, n: check_monoidal(o, n),
    "enriched": lambda o, n: check_enriched_category(o, n),
    "functor": lambda o, n: check_functor(o, n),
    "nat": lambda o, n: check_nat(o, n),
    "monoidal-functor": lambda o, n: check_monoidal_functor(o, n),
    "monoidal-nat": lambda o, n: check_monoidal_nat(o, n),
    "enriched-functor": lambda o, n: check_enriched_functor(o, n),
    "enriched-nat": lambda o, n: check_enriched_nat(o, n),
    "multicat": lambda o, n: check_fc_multicat(o, limit=n),
}

INPUT_ERRORS = (SpecError, OSError, AmbientError, MalformedData, EndpointMismatch, IllTyped,
                MalformedFamily, FamilyNotProductClosed, IncoherentFiberData, BoundExceeded,
                InvalidMulticatData, ValueError, KeyError)


class CommandError(Exception):
    pass


def _named(report, name):
    report.subject = name
    return report


def cmd_check(doc, target=None, limit=10):
    names = [target] if target else [n for n in doc.names() if doc.kinds[n] in CHECKERS]
    out = []
    for name in names:
        obj = doc.get(name, *CHECKERS)
        out.append(_named(CHECKERS[doc.kinds[name]](obj, limit), name))
    return out


def _index(doc, index):
    if index in ("1", "terminal") and index not in doc.kinds:
        return terminal()
    return doc.get(index, "set")


def cmd_externalize(doc, target, index, limit=10):
    s = _index(doc, index)
    kind = doc.decl(target).kind
    obj = doc.get(target, "category", "monoidal", "enriched")
    where = f"{target}[{index}]"
    if kind == "category":
        reports = [_named(check_category(fiber(obj, s).category(), limit), where)]
        if len(s) == 1:
            iso = fiber_iso_terminal(obj)
            r = _named(check_functor(iso, limit, prefix="iso"), f"{target} ≅ {where}")
            r.note("iso/objects", [f"{fmt_atom(a)} ↦ {fmt_atom(iso.f0(a))}" for a in obj.obj])
            reports.append(r)
        return reports
    if kind == "monoidal":
        return [_named(check_monoidal(fiber_monoidal(obj, s), limit), where)]
    y = enriched_fiber(obj, s)
    reports = [_named(check_enriched_category(y, limit), where)]
    if len(s) == 1:
        r = CheckReport(f"{target} ≅ {where}", limit)
        X = obj.carrier.elems
        r.record("iso/hom", ((a, b) for a in X for b in X if y.h((a,), (b,)) != (obj.h(a, b),)))
        r.record("iso/comp", ((a, b, c) for a in X for b in X for c in X
                              if y.c((a,), (b,), (c,)) != (obj.c(a, b, c),)))
        r.record("iso/ident", ((a,) for a in X if y.e((a,)) != (obj.e(a),)))
        r.note("iso/objects", [f"{fmt_atom(a)} ↦ {fmt_atom((a,))}" for a in X])
        reports.append(r)
    return reports


def _family(doc, family):
    if family == "standard" and family not in doc.kinds:
        return standard_family()
    names = family.split(",")
    if len(names) == 1 and doc.kinds.get(names[0]) == "family":
        members = doc.get(names[0], "family")
    else:
        members = [doc.get(n.strip(), "set") for n in names]
    connecting = [m for n, m in doc.objects.items()
                  if doc.kinds[n] == "map" and m.dom in members and m.cod in members]
    return members, connecting


def cmd_grothendieck(doc, target, family, limit=10):
    members, connecting = _family(doc, family)
    kind = doc.decl(target).kind
    obj = doc.get(target, "category", "monoidal")
    if kind == "category":
        tc = grothendieck(obj, members, connecting)
        r = check_grothendieck(tc, connecting, limit)
    else:
        mt = monoidal_grothendieck(obj, members, connecting)
        r = check_monoidal_grothendieck(mt, connecting, limit)
        tc = mt.tc
    r.note("total/size", [f"{len(tc.total.obj)} objects", f"{len(tc.total.arr)} arrows"])
    return [_named(r, f"∫{target}")]


def cmd_to_multicat(doc, target, bound=None, limit=10):
    bound = default_bound() if bound is None else bound
    kind = doc.decl(target).kind
    obj = doc.get(target, "enriched", "multicat")
    if kind == "multicat":
        return [_named(check_fc_multicat(obj, bound, limit), target)]
    mm = to_multicat(obj, bound)
    return [_named(check_fc_multicat(mm.source, bound, limit), f"Ind^{target}"),
            _named(check_fc_multicat(mm.target, bound, limit), f"M_{obj.v.name}"),
            _named(check_multicat_map(mm, bound, limit), f"{target} as a multicategory map")]


def cmd_roundtrip(doc, target, bound=None, limit=10):
    bound = default_bound() if bound is None else bound
    kind = doc.decl(target).kind
    obj = doc.get(target, "enriched", "enriched-functor")
    if kind == "enriched":
        return [_named(multicat_roundtrip(obj, bound, limit), target)]
    return [_named(multicat_functor_roundtrip(obj, bound, limit), target)]


def cmd_underlying(doc, target, limit=10):
    kind = doc.decl(target).kind
    obj = doc.get(target, "enriched", "enriched-functor", "enriched-nat")
    if kind == "enriched-functor":
        return [_named(check_functor(underlying_functor(obj), limit), f"U({target})")]
    if kind == "enriched-nat":
        return [_named(check_nat(underlying_nat(obj), limit), f"U({target})")]
    u = underlying_category(obj)
    r = _named(check_category(u, limit), f"U({target})")
    r.note("underlying/size", [f"{len(u.obj)} objects", f"{len(u.arr)} arrows"])
    reports = [r]
    for n, elems in (("0", []), ("1", ["i"]), ("2", ["i", "j"])):
        reports.append(_named(underlying_commute_check(obj, FiniteSet(elems, name=n), limit),
                              f"U/fiber square for {target} at {n}"))
    return reports


def cmd_export_dot(doc, target, path, index=None, family=None):
    kind = doc.decl(target).kind
    obj = doc.get(target, "category", "monoidal", "enriched", "multicat")
    if family:
        if kind not in ("category", "monoidal"):
            raise KindMismatch(f"{target!r} is a {kind}; a total category needs a category or monoidal")
        base = obj if kind == "category" else obj.base
        members, connecting = _family(doc, family)
        text = total_dot(grothendieck(base, members, connecting), f"∫{target}")
    elif index:
        s = _index(doc, index)
        if kind == "enriched":
            text = enriched_dot(enriched_fiber(obj, s), f"{target}[{index}]")
        elif kind == "multicat":
            raise KindMismatch(f"{target!r} is a multicat; fibers need a category")
        else:
            base = obj if kind == "category" else obj.base
            text = category_dot(fiber(base, s).category(), f"{target}[{index}]")
    elif kind == "category":
        text = category_dot(obj, target)
    elif kind == "monoidal":
        text = category_dot(obj.base, target)
    elif kind == "enriched":
        text = enriched_dot(obj, target)
    else:
        text = multicat_dot(obj, target)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    r = CheckReport(target)
    r.note("export/dot", [path])
    return [r]


# ---------------------------------------------------------------- report emission


def format_machine(reports):
    lines = [REPORT_HEADER]
    for r in reports:
        lines.append(f"subject {r.subject}")
        for a in r.results:
            lines.append(f"axiom {a.axiom} {'pass' if a.passed else 'fail'} {a.count}")
            for w in a.witnesses:
                lines.append(f"witness {a.axiom} {fmt_witness(w)}")
            for n in a.notes:
                lines.append(f"note {a.axiom} {n}")
        lines.append(f"result {'pass' if r.passed else 'fail'}")
    lines.append(f"status {'pass' if all(r.passed for r in reports) else 'fail'}")
    return "\n".join(lines) + "\n"


def format_human(reports):
    lines = []
    for r in reports:
        lines.append(f"{r.subject}: {'PASS' if r.passed else 'FAIL'}")
        for a in r.results:
            if a.passed:
                lines.append(f"  ok    {a.axiom}")
            else:
                shown = len(a.witnesses)
                more = f", showing {shown}" if shown < a.count else ""
                lines.append(f"  FAIL  {a.axiom} ({a.count} failing instance{'s' * (a.count != 1)}{more})")
                for w in a.witnesses:
                    lines.append(f"          at {fmt_witness(w)}")
            for n in a.notes:
                lines.append(f"          {n}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- entry point


def _limit(text):
    if text == "all":
        return None
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("witness limit must be non-negative or 'all'")
    return n


def _bound(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="icat", description="Check internal categorical structures.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--witness-limit", type=_limit, default=10, metavar="N",
                        help="witnesses shown per axiom, or 'all'")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="check every declaration or one target")
    c.add_argument("--target")
    c = sub.add_parser("externalize", parents=[common], help="check the fiber over an index set")
    c.add_argument("--target", required=True)
    c.add_argument("--index", required=True)
    c = sub.add_parser("grothendieck", parents=[common], help="check the Grothendieck construction")
    c.add_argument("--target", required=True)
    c.add_argument("--family", required=True, help="comma-separated set names, a family, or 'standard'")
    for name, text in (("multicat", "check the multicategory translation"),
                       ("roundtrip", "check enriched ↔ multicategory round trips")):
        c = sub.add_parser(name, parents=[common], help=text)
        c.add_argument("--target", required=True)
        c.add_argument("--bound", type=_bound, default=None)
    c = sub.add_parser("underlying", parents=[common], help="check the underlying category")
    c.add_argument("--target", required=True)
    c = sub.add_parser("export-dot", parents=[common], help="write a DOT graph")
    c.add_argument("--target", required=True)
    c.add_argument("-o", "--output", required=True, help="output path, or '-' for stdout")
    c.add_argument("--index")
    c.add_argument("--family")
    return p


def run(args):
    with open(args.file, "rb") as fh:
        doc = parse_spec(fh.read())
    n = args.witness_limit
    if args.command == "check":
        return cmd_check(doc, args.target, n)
    if args.command == "externalize":
        return cmd_externalize(doc, args.target, args.index, n)
    if args.command == "grothendieck":
        return cmd_grothendieck(doc, args.target, args.family, n)
    if args.command == "multicat":
        return cmd_to_multicat(doc, args.target, args.bound, n)
    if args.command == "roundtrip":
        return cmd_roundtrip(doc, args.target, args.bound, n)
    if args.command == "underlying":
        return cmd_underlying(doc, args.target, n)
    return cmd_export_dot(doc, args.target, args.output, args.index, args.family)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        reports = run(args)
    except (TargetNotFound, KindMismatch) as e:
        print(f"icat: {e.message}", file=sys.stderr)
        return 2
    except SpecError as e:
        print(f"icat: {args.file}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as e:
        print(f"icat: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except RecursionError:
        print("icat: input too deeply nested", file=sys.stderr)
        return 2
    out = sys.stdout
    if args.command == "export-dot" and args.output == "-":
        out = sys.stderr
    out.write(format_machine(reports) if args.format == "machine" else format_human(reports))
    return 0 if all(r.passed for r in reports) else 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
