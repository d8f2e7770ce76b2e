"""Command line surface.

Subcommands: info, validate, tree, decmatrix, algebra, rickard, star,
selftest.  Every report is deterministic JSON with sorted keys; DOT output
is available for trees.  Exit codes: 0 for success and verified checks,
2 when a mathematical verification fails (regime invalid, oracle mismatch,
tilting failure, selftest failure), 1 for usage or IO errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import brauer_tree as bt
from . import homotopy as ho
from . import oracle as orc
from . import selftest as st
from . import tree_algebra as ta
from .ell_arith import BadRegime, eigenvalue_table, validate_regime
from .root_data import (UnsupportedType, coxeter_datum, group_order_poly,
                        parse_type, torus_order_poly)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(ValueError):
    pass


# JSON schemas published for the reports (draft-07 subset)
POLY_SCHEMA = {
    "type": "object",
    "properties": {
        "coeffs": {"type": "array",
                   "items": {"type": "array", "items": {"type": "integer"},
                             "minItems": 2, "maxItems": 2}},
        "sqrt_prime": {"type": ["integer", "null"]},
        "pretty": {"type": "string"},
    },
    "required": ["coeffs", "sqrt_prime", "pretty"],
}

TREE_SCHEMA = {
    "type": "object",
    "properties": {
        "h0": {"type": "integer"},
        "r": {"type": "integer"},
        "multiplicity": {"type": "integer"},
        "branches": {"type": "array", "items": {
            "type": "object",
            "properties": {"zeta": {"type": "integer"},
                           "m": {"type": "integer"},
                           "M": {"type": "integer"}},
            "required": ["zeta", "m", "M"]}},
        "cyclic_order": {"type": "array", "items": {"type": "integer"}},
        "labels": {"type": "object"},
        "annotations": {"type": "object"},
        "star": {"type": "object"},
    },
    "required": ["h0", "r", "multiplicity", "branches", "cyclic_order"],
}

SCHEMAS = {
    "info": {
        "type": "object",
        "properties": {
            "type": {"type": "string"}, "rank": {"type": "integer"},
            "h": {"type": "integer"}, "h0": {"type": "integer"},
            "delta": {"type": "integer"}, "r": {"type": "integer"},
            "degrees": {"type": "array", "items": {"type": "integer"}},
            "group_order": POLY_SCHEMA, "torus_order": POLY_SCHEMA,
        },
        "required": ["type", "h", "h0", "delta", "r", "degrees",
                     "group_order", "torus_order"],
    },
    "validate": {
        "type": "object",
        "properties": {
            "valid": {"type": "boolean"},
            "reason": {"type": ["string", "null"]},
            "eigenvalue_table": {"type": ["array", "null"],
                                 "items": {"type": "integer"}},
        },
        "required": ["valid", "reason", "eigenvalue_table"],
    },
    "tree": TREE_SCHEMA,
    "decmatrix": {
        "type": "object",
        "properties": {
            "rows": {"type": "array", "items": {"type": "string"}},
            "columns": {"type": "array", "items": {"type": "integer"}},
            "matrix": {"type": "array",
                       "items": {"type": "array", "items": {"type": "integer"}}},
            "cartan": {"type": "array",
                       "items": {"type": "array", "items": {"type": "integer"}}},
            "unitriangular": {"type": "boolean"},
            "order": {"type": "array", "items": {"type": "integer"}},
        },
        "required": ["rows", "columns", "matrix", "cartan", "unitriangular"],
    },
    "algebra": {
        "type": "object",
        "properties": {
            "dimension": {"type": "integer"},
            "field": {"type": "integer"},
            "cartan": {"type": "array",
                       "items": {"type": "array", "items": {"type": "integer"}}},
            "ext1": {"type": "array",
                     "items": {"type": "array", "items": {"type": "integer"}}},
            "vertices": {"type": "array", "items": {"type": "integer"}},
        },
        "required": ["dimension", "field", "cartan", "ext1", "vertices"],
    },
    "rickard": {
        "type": "object",
        "properties": {
            "vertex": {"type": "integer"},
            "degrees": {"type": "array", "items": {"type": "integer"}},
            "terms": {"type": "object"},
            "euler": {"type": "object"},
            "cohomology": {"type": "object"},
            "tilting": {"type": ["object", "null"]},
        },
        "required": ["vertex", "degrees", "terms", "euler", "cohomology",
                     "tilting"],
    },
    "star": {
        "type": "object",
        "properties": {
            "tree": TREE_SCHEMA,
            "decomposition": {"type": "array",
                              "items": {"type": "array",
                                        "items": {"type": "integer"}}},
            "oracle": {"type": ["array", "null"],
                       "items": {"type": "array", "items": {"type": "integer"}}},
            "match": {"type": ["boolean", "null"]},
        },
        "required": ["tree", "decomposition", "oracle", "match"],
    },
    "selftest": {
        "type": "object",
        "properties": {
            "results": {"type": "array", "items": {
                "type": "object",
                "properties": {"name": {"type": "string"},
                               "ok": {"type": "boolean"},
                               "detail": {"type": "string"},
                               "seconds": {"type": "number"}},
                "required": ["name", "ok", "detail", "seconds"]}},
            "ok": {"type": "boolean"},
        },
        "required": ["results", "ok"],
    },
}


def _emit(obj, out_path: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    _write(text, out_path)


def _write(text: str, out_path: str | None):
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _poly_obj(poly):
    return {"coeffs": [list(c) for c in poly.coeffs],
            "sqrt_prime": poly.p, "pretty": poly.pretty()}


def _default_precision(args_precision):
    if args_precision is not None:
        return args_precision
    env = os.environ.get("COXBRAUER_PRECISION")
    return int(env) if env else None


def _load_tree(args) -> bt.PlanarBrauerTree:
    """Resolve the mutually exclusive --tree / --fixture input sources."""
    if getattr(args, "tree", None):
        if args.tree == "-":
            return bt.from_json(sys.stdin.read())
        with open(args.tree, encoding="utf-8") as fh:
            return bt.from_json(fh.read())
    name = args.fixture
    if name is None:
        raise _UsageError("one of --tree or --fixture is required")
    series, labels = bt.fixture_series(name)
    if name.lower() == "2g2":
        qsq = args.qsq if args.qsq is not None else st.REE_FIXTURE["qsq"]
        ell = args.ell if args.ell is not None else st.REE_FIXTURE["ell"]
        ctx = validate_regime(coxeter_datum(parse_type("2G2")), qsq, ell,
                              precision=_default_precision(getattr(args, "precision", None)))
        return bt.principal_block_tree(ctx, series, labels=labels)
    mu = args.mu if getattr(args, "mu", None) else 1
    r = args.r if getattr(args, "r", None) else 1
    return bt.assemble_tree(series, mu, r, labels=labels)


def _tree_args(sub, with_field=False):
    sub.add_argument("--tree", help="tree JSON file, or - for stdin")
    sub.add_argument("--fixture", help="builtin fixture: 2g2 or lineN")
    sub.add_argument("--qsq", type=int, help="q (q^2 for Suzuki/Ree fixtures)")
    sub.add_argument("--ell", type=int, help="the prime ell")
    sub.add_argument("--mu", type=int, help="multiplicity for line fixtures")
    sub.add_argument("--r", type=int, help="homological offset for line fixtures")
    if with_field:
        sub.add_argument("--field", type=int, default=None,
                         help="prime field order for the tree algebra")
    sub.add_argument("--out", default="-", help="output path, - for stdout")


def _field_for(tree, args) -> int:
    if getattr(args, "field", None):
        return args.field
    meta = dict(tree.star_meta or ())
    if meta:
        from .numtheory import prime_power_split
        return prime_power_split(meta["d_order"])[0]
    if tree.h0 == 6 and tree.multiplicity == 3:
        return 19
    return 5


def build_parser() -> _Parser:
    parser = _Parser(prog="coxbrauer", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("info", help="Coxeter datum and order polynomials")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--out", default="-")

    p = subs.add_parser("validate", help="check a (type, q, ell) regime")
    p.add_argument("--type", required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--qsq", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--precision", type=int)
    p.add_argument("--out", default="-")

    p = subs.add_parser("tree", help="build a planar Brauer tree")
    _tree_args(p)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--precision", type=int)

    p = subs.add_parser("decmatrix", help="decomposition and Cartan matrices")
    _tree_args(p)

    p = subs.add_parser("algebra", help="tree algebra invariants")
    _tree_args(p, with_field=True)

    p = subs.add_parser("rickard", help="branch complex of a vertex")
    _tree_args(p, with_field=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--check-tilting", action="store_true")

    p = subs.add_parser("star", help="star tree with the metacyclic oracle")
    p.add_argument("--d", type=int, required=True, help="|D|, a prime power")
    p.add_argument("--e", type=int, required=True, help="|E|")
    p.add_argument("--n", type=int, required=True, help="action exponent")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", default="-")

    p = subs.add_parser("selftest", help="run the acceptance fixture suite")
    p.add_argument("--filter", help="run only criteria whose name contains this")
    p.add_argument("--out", default="-")
    return parser


def _cmd_info(args) -> int:
    datum = coxeter_datum(parse_type(args.type, args.rank))
    _emit({
        "type": datum.type.family, "rank": datum.type.rank,
        "h": datum.h, "h0": datum.h0, "delta": datum.delta, "r": datum.r,
        "degrees": list(datum.degrees),
        "group_order": _poly_obj(group_order_poly(datum)),
        "torus_order": _poly_obj(torus_order_poly(datum)),
    }, args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    datum = coxeter_datum(parse_type(args.type, args.rank))
    try:
        ctx = validate_regime(datum, args.qsq, args.ell,
                              precision=_default_precision(args.precision))
    except BadRegime as exc:
        _emit({"valid": False, "reason": str(exc), "eigenvalue_table": None},
              args.out)
        return EXIT_VERIFICATION
    table = eigenvalue_table(ctx)
    _emit({"valid": True, "reason": None,
           "eigenvalue_table": [table[j] for j in range(ctx.h0)]}, args.out)
    return EXIT_OK


def _cmd_tree(args) -> int:
    tree = _load_tree(args)
    if args.format == "dot":
        _write(bt.to_dot(tree), args.out)
    else:
        _emit(bt.tree_to_obj(tree), args.out)
    return EXIT_OK


def _cmd_decmatrix(args) -> int:
    tree = _load_tree(args)
    d = bt.decomposition_matrix(tree)
    ok, order = bt.check_unitriangular(d, "height")
    _emit({
        "rows": [f"{kind}{idx}" for kind, idx in d.row_labels],
        "columns": list(d.col_edges),
        "matrix": d.matrix.tolist(),
        "cartan": bt.cartan_matrix(d).tolist(),
        "unitriangular": ok,
        "order": order,
    }, args.out)
    return EXIT_OK


def _cmd_algebra(args) -> int:
    tree = _load_tree(args)
    alg = ta.from_tree(tree, _field_for(tree, args))
    vs = sorted(alg.vertices)
    _emit({
        "dimension": alg.dim,
        "field": alg.ell,
        "vertices": vs,
        "cartan": [[len(ta.hom_space(alg, i, j)) for j in vs] for i in vs],
        "ext1": [[ta.ext1(alg, i, j) for j in vs] for i in vs],
    }, args.out)
    return EXIT_OK


def _cmd_rickard(args) -> int:
    tree = _load_tree(args)
    if args.vertex not in tree.edge_indices():
        raise _UsageError(f"vertex {args.vertex} out of range "
                          f"0..{tree.h0 - 1}")
    alg = ta.from_tree(tree, _field_for(tree, args))
    cx = ho.rickard_complex(alg, tree, args.vertex)
    coh = ho.cohomology(cx)
    euler = ho.euler_character(tree, cx)
    report = {
        "vertex": args.vertex,
        "degrees": list(cx.degrees()),
        "terms": {str(d): sorted(cx.term(d)) for d in cx.degrees()},
        "euler": {"chi": list(euler.chi), "exc": euler.exc},
        "cohomology": {str(d): {str(v): c for v, c in sorted(counts.items())}
                       for d, counts in sorted(coh.items())},
        "tilting": None,
    }
    code = EXIT_OK
    if args.check_tilting:
        try:
            rep = ho.check_tilting(alg, tree)
            report["tilting"] = {"ok": True, "end_dimension": rep.end_dim,
                                 "expected_end_dimension": rep.expected_end_dim}
        except ho.TiltingFailure as exc:
            report["tilting"] = {"ok": False, "detail": exc.report.summary()}
            code = EXIT_VERIFICATION
    _emit(report, args.out)
    return code


def _cmd_star(args) -> int:
    tree = bt.star_tree(args.d, args.e, args.n)
    d = bt.decomposition_matrix(tree)
    report = {"tree": bt.tree_to_obj(tree),
              "decomposition": d.matrix.tolist(),
              "oracle": None, "match": None}
    code = EXIT_OK
    if args.verify:
        group = orc.MetacyclicGroup(args.d, args.e, args.n)
        report["oracle"] = orc.brute_decomposition_matrix(group).tolist()
        try:
            report["match"] = orc.verify_star(tree, group)
        except orc.Mismatch as exc:
            report["match"] = False
            report["mismatch"] = str(exc)
            code = EXIT_VERIFICATION
    _emit(report, args.out)
    return code


def _cmd_selftest(args) -> int:
    results = st.run_all(args.filter)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        sys.stderr.write(f"{status} {r.name:32s} {r.elapsed:6.2f}s  {r.detail}\n")
    _emit({"ok": all(r.ok for r in results),
           "results": [{"name": r.name, "ok": r.ok, "detail": r.detail,
                        "seconds": round(r.elapsed, 3)} for r in results]},
          args.out)
    return EXIT_OK if results and all(r.ok for r in results) else EXIT_VERIFICATION


_COMMANDS = {
    "info": _cmd_info,
    "validate": _cmd_validate,
    "tree": _cmd_tree,
    "decmatrix": _cmd_decmatrix,
    "algebra": _cmd_algebra,
    "rickard": _cmd_rickard,
    "star": _cmd_star,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_USAGE
    except (UnsupportedType, bt.ParseError, bt.InvalidSeries, bt.BadAction,
            KeyError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (orc.Mismatch, ho.TiltingFailure) as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
