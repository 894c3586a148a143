"""The ``fano`` command.

Exit codes: 0 when everything checked passes, 1 on a verification or
evaluation failure, 2 on usage, parse or grading errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import surface
from .chowmodel import build_model, eigenprojectors, verify_minpolys
from .algebra.matrix import minimal_polynomial
from .dsl import EvaluationError, DSLError, evaluate, format_value, parse
from .ops import jsonable
from .registry import RegistryError, run_suite
from .tautological import cylinder_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj) -> None:
    print(json.dumps(jsonable(obj), indent=2, ensure_ascii=False))


def cmd_verify(args) -> int:
    try:
        code, report = run_suite(args.only, args.seed, args.registry)
    except RegistryError as exc:
        print(f"fano verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for r in report["results"]:
        print(f"{r['status'].upper():4}  {r['name']:40} {r['millis']:9.1f} ms")
    passed = sum(r["status"] == "pass" for r in report["results"])
    print(f"{passed}/{len(report['results'])} identities pass")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, ensure_ascii=False)
    return code


def cmd_eval(args) -> int:
    try:
        node = parse(args.expr)
    except DSLError as exc:
        print(f"fano eval: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        value = evaluate(node)
    except EvaluationError as exc:
        print(f"fano eval: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(format_value(value))
    return EXIT_OK


def _parse_index(text: str) -> surface.LineLabel:
    try:
        return surface.LineLabel.parse(text)
    except ValueError:
        return surface.LineLabel("E", int(text))


def cmd_surface(args) -> int:
    if args.pair:
        try:
            x, y = (_parse_index(t) for t in args.pair)
            cert = surface.verify_pair_decomposition(x, y)
        except (ValueError, KeyError) as exc:
            print(f"fano surface: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except surface.DecompositionNotFound as exc:
            print(f"fano surface: {exc}", file=sys.stderr)
            return EXIT_FAIL
        out = cert.to_json()
        out["secants"] = [str(z) for z in surface.secant_lines(x, y)]
        out["valid"] = cert.is_valid()
        _emit(out)
        return EXIT_OK if cert.is_valid() else EXIT_FAIL
    if args.triangles:
        _emit([[str(l) for l in t.lines] for t in surface.enumerate_triangles()])
    elif args.partition:
        _emit([[str(l) for l in t.lines] for t in surface.find_triangle_partition()])
    else:
        _emit([{"line": str(lab), "class": list(cls.coeffs),
                "meets": [str(y) for y in surface.all_labels() if y != lab and surface.meets(lab, y)]}
               for lab, cls in surface.enumerate_lines()])
    return EXIT_OK


def cmd_tables(args) -> int:
    rows = []
    ok = True
    for lhs, expected, computed in cylinder_table():
        ok = ok and expected == computed
        rows.append({"expression": lhs, "expected": str(expected), "computed": str(computed)})
    _emit({"cylinder": rows})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_minpoly(args) -> int:
    grade = args.grade
    model = build_model(args.ranks, basis_seed=args.seed)
    M = model.phi_pull_full0() if grade == 0 else model.phi_pull(grade)
    label = {0: "phi^* on CH_0", 1: "phi^* on CH_1 hom", 2: "phi^* on CH_2 hom"}[grade]
    row = next(r for r in verify_minpolys(model) if r["operator"] == label)
    out = {
        "grade": grade, "ranks": list(model.ranks), "operator": label,
        "minimal_polynomial": str(minimal_polynomial(M)), "expected": row["expected"],
        "eigenvalues": sorted(eigenprojectors(model, grade)),
    }
    _emit(out)
    return EXIT_OK if row["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fano", description="Exact verifier for Chow-ring identities on the Fano variety of lines.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the identity registry")
    v.add_argument("--only", metavar="GLOB", help="run only identities whose name matches")
    v.add_argument("--json", metavar="PATH", help="write the report here")
    v.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    v.add_argument("--registry", metavar="PATH", help="extra identity file to load")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("expr")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("surface", help="lines and triangles on a cubic surface")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--lines", action="store_true")
    g.add_argument("--triangles", action="store_true")
    g.add_argument("--partition", action="store_true")
    g.add_argument("--pair", nargs=2, metavar=("I", "J"),
                   help="disjoint pair, as labels (E1, L23, C4) or exceptional indices")
    s.set_defaults(func=cmd_surface)

    t = sub.add_parser("tables", help="cylinder map tables")
    t.set_defaults(func=cmd_tables)

    m = sub.add_parser("minpoly", help="minimal polynomial of phi^* on one grade of the block model")
    m.add_argument("grade", type=int, choices=(0, 1, 2))
    m.add_argument("--ranks", type=int, nargs=4, default=(1, 1, 1, 1), metavar="R")
    m.add_argument("--seed", type=int, default=None, help="seed for the change of basis")
    m.set_defaults(func=cmd_minpoly)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
