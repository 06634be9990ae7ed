"""Command-line front end: ``relthy <command> ...``.

Every command prints JSON (sorted keys, one object per line).  Exit codes:
0 success, 1 a checked property failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import builtins
from .cospan import equal_mod_frobenius, to_cospan
from .dsl import format_theory, parse_file, parse_term
from .errors import RelthyError
from .finrel import Model, classify, format_relation, parse_relation, per_split, tabulate
from .search import (SearchSpec, check_model, count_models, default_budget,
                     enumerate_models, enumerate_morphisms)
from .split import FragmentSpec, verify_comparison, verify_effective, verify_tabular
from .terms import typecheck

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def emit(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _theory(args):
    if args.builtin:
        return builtins.builtin(args.builtin)
    if args.theory:
        return parse_file(args.theory)
    raise RelthyError("give --builtin NAME or --theory FILE")


def _sizes(args, theory):
    if args.sizes:
        sizes = {}
        for item in args.sizes.split(","):
            sort, _, n = item.partition("=")
            sizes[sort.strip()] = int(n)
        missing = set(theory.sorts) - set(sizes)
        if missing:
            raise RelthyError(f"no size given for sorts {sorted(missing)}")
        return {s: sizes[s] for s in theory.sorts}
    if args.size is None:
        raise RelthyError("give --size N or --sizes SORT=N,...")
    return {s: args.size for s in theory.sorts}


def _load_model(theory, path):
    with open(path, encoding="utf-8") as fh:
        return Model.from_json(theory, json.load(fh))


def cmd_models(args):
    theory = _theory(args)
    sizes = _sizes(args, theory)
    head = {"theory": theory.name, "sizes": [sizes[s] for s in theory.sorts]}
    if args.stream or args.first:
        spec = SearchSpec(theory, sizes, "first" if args.first else "stream",
                          upto_iso=args.upto_iso, budget=args.budget)
        found = enumerate_models(spec)
        models = [found] if args.first else found
        n = 0
        for m in models:
            if m is None:
                break
            n += 1
            emit({"model": m.to_json()["model"], "sizes": head["sizes"]})
        emit(dict(head, count=n, upto_iso=args.upto_iso))
        return EXIT_OK
    count = count_models(theory, sizes, upto_iso=args.upto_iso, budget=args.budget,
                         workers=args.threads)
    emit(dict(head, count=count, upto_iso=args.upto_iso))
    return EXIT_OK


def cmd_eq(args):
    theory = _theory(args)
    t, u = parse_term(args.term1, theory), parse_term(args.term2, theory)
    tt, tu = typecheck(t, theory), typecheck(u, theory)
    if tt != tu:
        raise RelthyError(f"terms have different interfaces {tt} and {tu}")
    w = equal_mod_frobenius(t, u, theory)
    if w is None:
        emit({"result": "not-structurally-equal"})
        return EXIT_FAIL
    emit({"result": "structurally-equal",
          "witness": {"vertices": list(w.vertex_map), "edges": list(w.edge_map)}})
    return EXIT_OK


def cmd_cospan(args):
    theory = _theory(args)
    c = to_cospan(parse_term(args.term, theory), theory)
    sys.stdout.write(c.to_dot() if args.dot else c.dump())
    return EXIT_OK


def cmd_check(args):
    theory = _theory(args)
    report = check_model(_load_model(theory, args.model))
    emit(report.to_json())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_morphisms(args):
    theory = _theory(args)
    F = _load_model(theory, args.source)
    G = _load_model(theory, args.target)
    bad = [name for name, m in (("from", F), ("to", G)) if not check_model(m).ok]
    if bad:
        emit({"error": f"not a model: {', '.join(bad)}"})
        return EXIT_FAIL
    n = 0
    for mor in enumerate_morphisms(F, G, verify=args.verify):
        n += 1
        if not args.count:
            emit(mor.to_json())
    emit({"count": n})
    return EXIT_OK


def cmd_classify(args):
    rel = parse_relation(args.rel)
    props = classify(rel)
    emit({"relation": format_relation(rel), "properties": sorted(props)})
    return EXIT_OK


def cmd_split(args):
    if args.rel:
        sp = per_split(parse_relation(args.rel))
        emit({"quotient": sp.quotient, "s": format_relation(sp.s), "r": format_relation(sp.r)})
        return EXIT_OK
    if args.max_size is None:
        raise RelthyError("give --rel LITERAL or --max-size K")
    reports = []
    if args.fragment == "per":
        reports.append(verify_effective(FragmentSpec(args.max_size, "per")))
        if args.compare:
            reports.append(verify_comparison(args.max_size))
    elif args.fragment in ("cor", "eq"):
        raise RelthyError("splitting PERs is checked on the per fragment; "
                          "use `relthy tabulate` for cor")
    for rep in reports:
        emit(rep.to_json())
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_tabulate(args):
    if args.rel:
        rel = parse_relation(args.rel)
        tab = tabulate(rel)
        emit({"apex": tab.apex, "h": format_relation(tab.h), "k": format_relation(tab.k)})
        return EXIT_OK
    if args.max_size is None:
        raise RelthyError("give --rel LITERAL or --max-size K")
    rep = verify_tabular(FragmentSpec(args.max_size, args.fragment), samples=args.samples)
    emit(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_print(args):
    sys.stdout.write(format_theory(_theory(args)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relthy", description="Workbench for relational algebraic theories.")
    sub = p.add_subparsers(dest="command", required=True)

    def theory_opts(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--builtin", choices=builtins.NAMES)
        g.add_argument("--theory", metavar="FILE", help=".rat theory file")

    sp = sub.add_parser("models", help="count or list finite models")
    theory_opts(sp)
    sp.add_argument("--size", type=int)
    sp.add_argument("--sizes", help="per-sort sizes, e.g. A=2,B=3")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print only the count (default)")
    mode.add_argument("--stream", action="store_true", help="print every model")
    mode.add_argument("--first", action="store_true", help="print the first model found")
    sp.add_argument("--upto-iso", action="store_true",
                    help="count isomorphism classes (orbits under carrier permutations)")
    sp.add_argument("--budget", type=int, default=default_budget())
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_models)

    sp = sub.add_parser("eq", help="decide equality modulo the Frobenius laws")
    theory_opts(sp)
    sp.add_argument("term1")
    sp.add_argument("term2")
    sp.set_defaults(func=cmd_eq)

    sp = sub.add_parser("cospan", help="dump the hypergraph of a term")
    theory_opts(sp)
    sp.add_argument("term")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_cospan)

    sp = sub.add_parser("check", help="check a model file against a theory")
    theory_opts(sp)
    sp.add_argument("--model", required=True, metavar="FILE")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("morphisms", help="enumerate lax morphisms between two models")
    theory_opts(sp)
    sp.add_argument("--from", dest="source", required=True, metavar="FILE")
    sp.add_argument("--to", dest="target", required=True, metavar="FILE")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--verify", action="store_true", help="range over all relations, not just maps")
    sp.set_defaults(func=cmd_morphisms)

    sp = sub.add_parser("classify", help="list the properties of a relation")
    sp.add_argument("--rel", required=True, help='literal such as "rel 2 2 {(0,0),(1,1)}"')
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("split", help="split PERs, or verify effectivity of a fragment")
    sp.add_argument("--rel")
    sp.add_argument("--fragment", choices=("cor", "eq", "per"), default="per")
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--compare", action="store_true",
                    help="also compare Split_per with Split_eq(Split_cor)")
    sp.set_defaults(func=cmd_split)

    sp = sub.add_parser("tabulate", help="tabulate a relation, or verify tabularity of a fragment")
    sp.add_argument("--rel")
    sp.add_argument("--fragment", choices=("cor", "per"), default="cor")
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--samples", type=int, default=2000)
    sp.set_defaults(func=cmd_tabulate)

    sp = sub.add_parser("print", help="pretty-print a theory")
    theory_opts(sp)
    sp.set_defaults(func=cmd_print)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RelthyError, OSError, json.JSONDecodeError) as exc:
        print(f"relthy: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
