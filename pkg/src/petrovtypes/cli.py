"""Command-line front end.

Subcommands:
  classify  read an operator/Gram pair from JSON and print its types
  catalog   list the example catalog or evaluate one entry at a point
  verify    run the finite-difference checks over seeded samples
  report    regenerate one of the three classification tables

All JSON output carries a top-level "schema": "1" key and echoes the resolved
tolerance.  Exit status: 0 on success, 1 when a requested check fails or a
module reports a contract error, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import catalog, verify
from .linalg import (
    ClusterAmbiguityError,
    ShapeError,
    ToleranceError,
    default_tol,
    matrix_from_json,
    matrix_to_json,
)
from .petrov import ConditioningError, classify_pair
from .spaceform import DomainError

SCHEMA = "1"


class CliError(Exception):
    pass


def _emit(payload: dict, as_json: bool, markdown_lines=None) -> None:
    if as_json or markdown_lines is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in markdown_lines:
            print(line)


def _base_payload(tol: float) -> dict:
    return {"schema": SCHEMA, "tolerance": tol}


def _parse_point(text: str, expected: int) -> np.ndarray:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise CliError(f"point must be comma-separated numbers: {exc}") from exc
    if len(vals) != expected:
        raise CliError(f"point needs {expected} coordinates, got {len(vals)}")
    return np.array(vals)


def _cmd_classify(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.input} is not valid JSON: {exc}") from exc
    try:
        a = matrix_from_json(obj["a"])
        gram = matrix_from_json(obj["gram"])
    except KeyError as exc:
        raise CliError(f'input needs "a" and "gram" matrices: missing {exc}') from exc
    result = classify_pair(np.asarray(a, dtype=float), np.asarray(gram, dtype=float), tol)
    payload = _base_payload(tol) | result
    md = [
        f"tolerance: {tol}",
        f"algebraic type: {result['algebraic']['label']} (index {result['algebraic']['index']})",
        f"geometric type: {result['geometric']['label']} (index {result['geometric']['index']})",
        f"negative index: {result['negative_index']}",
    ]
    _emit(payload, args.json, md)
    return 0


def _cmd_catalog(args) -> int:
    tol = default_tol()
    if args.action == "list":
        rows = catalog.catalog_summary()
        payload = _base_payload(tol) | {"examples": rows}
        md = [f"tolerance: {tol}", "", "| id | ambient | expected type |", "|---|---|---|"]
        md += [f"| {r['id']} | {r['ambient']} | {r['expected_type']} |" for r in rows]
        _emit(payload, args.json, md)
        return 0
    # action == "eval"
    if args.id is None or args.point is None:
        raise CliError("catalog eval needs an example id and --point")
    p = _parse_point(args.point, catalog.param_dim(args.id))
    fd = catalog.evaluate(args.id, p, a=args.a, anchor_variant=args.anchor_variant)
    payload = _base_payload(tol) | {
        "id": args.id,
        "point": [float(x) for x in fd.point],
        "frame": matrix_to_json(fd.frame),
        "normal": [float(x) for x in fd.normal],
        "shape": matrix_to_json(fd.shape),
        "gram": matrix_to_json(fd.gram),
        "nu": fd.nu,
    }
    md = [
        f"tolerance: {tol}",
        f"point: {np.array2string(fd.point, precision=6)}",
        f"nu: {fd.nu}",
        f"shape:\n{np.array2string(fd.shape, precision=6)}",
        f"gram:\n{np.array2string(fd.gram, precision=6)}",
    ]
    _emit(payload, args.json, md)
    return 0


def _cmd_verify(args) -> int:
    tol = default_tol()
    ids = [args.id] if args.id else list(catalog.EXAMPLE_IDS)
    reports = []
    for ex_id in ids:
        reports.extend(
            verify.run_checks(ex_id, samples=args.samples, seed=args.seed, h=args.h)
        )
    all_pass = all(r.passed for r in reports)
    summary = {}
    for r in reports:
        key = (r.example_id, r.check)
        entry = summary.setdefault(
            key, {"max_residual": 0.0, "threshold": r.threshold, "h": r.h, "passed": True}
        )
        entry["max_residual"] = max(entry["max_residual"], r.residual)
        entry["passed"] = entry["passed"] and r.passed
    rows = [
        {"id": ex_id, "check": check} | entry
        for (ex_id, check), entry in sorted(summary.items())
    ]
    payload = _base_payload(tol) | {
        "samples": args.samples,
        "seed": args.seed,
        "checks": rows,
        "all_passed": all_pass,
    }
    md = [f"tolerance: {tol}", "", "| id | check | max residual | threshold | pass |", "|---|---|---|---|---|"]
    md += [
        f"| {r['id']} | {r['check']} | {r['max_residual']:.3e} | {r['threshold']:.0e} | {'yes' if r['passed'] else 'NO'} |"
        for r in rows
    ]
    _emit(payload, args.json, md)
    return 0 if all_pass else 1


def _cmd_report(args) -> int:
    tol = default_tol()
    doc = verify.table_report(args.table, samples=args.samples, seed=args.seed)
    payload = _base_payload(tol) | doc
    md = [f"tolerance: {tol}", ""]
    if args.table == 1:
        cols = doc["columns"]
        md.append("| ambient | " + " | ".join(cols) + " |")
        md.append("|" + "---|" * (len(cols) + 1))
        symbol = {"x": "x", "triangle": "(triangle)", "open": " "}
        for row_name, cells in doc["rows"].items():
            md.append(
                f"| {row_name} | "
                + " | ".join(symbol.get(cells[c], f"({cells[c]})") for c in cols)
                + " |"
            )
    else:
        md.append("| region | stated type | computed | match |")
        md.append("|---|---|---|---|")
        for row in doc["rows"]:
            md.append(
                f"| {row['region']} | {row['stated']} | {', '.join(row['computed'])} | "
                f"{'yes' if row['match'] else 'NO'} |"
            )
    if doc["mismatches"]:
        md.append("")
        md.append(f"mismatches: {doc['mismatches']}")
    _emit(payload, args.json, md)
    return 0 if not doc["mismatches"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petrovtypes",
        description="Classify self-adjoint operator/metric pairs on indefinite "
        "inner-product spaces and verify the example catalog.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="classify an operator/Gram pair from JSON")
    p_cls.add_argument("--input", required=True, help='JSON file with "a" and "gram"')
    p_cls.add_argument("--tol", type=float, default=None, help="tolerance override")
    p_cls.add_argument("--json", action="store_true", help="JSON output")
    p_cls.set_defaults(func=_cmd_classify)

    p_cat = sub.add_parser("catalog", help="list examples or evaluate one")
    p_cat.add_argument("action", choices=["list", "eval"])
    p_cat.add_argument("id", nargs="?", default=None, help="example id for eval")
    p_cat.add_argument("--point", default=None, help="comma-separated chart coordinates")
    p_cat.add_argument("--a", type=float, default=1.0, help="curvature parameter for k/l")
    p_cat.add_argument(
        "--anchor-variant", action="store_true",
        help="use the special anchor-point basis (entries h and i)",
    )
    p_cat.add_argument("--json", action="store_true", help="JSON output")
    p_cat.set_defaults(func=_cmd_catalog)

    p_ver = sub.add_parser("verify", help="run finite-difference checks")
    p_ver.add_argument("action", choices=["run"])
    p_ver.add_argument("--id", default=None, choices=list(catalog.EXAMPLE_IDS))
    p_ver.add_argument("--h", type=float, default=None, help="step override")
    p_ver.add_argument("--samples", type=int, default=5)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--json", action="store_true", help="JSON output")
    p_ver.add_argument("--markdown", action="store_true", help="markdown output")
    p_ver.set_defaults(func=_cmd_verify)

    p_rep = sub.add_parser("report", help="regenerate a classification table")
    p_rep.add_argument("--table", type=int, required=True, choices=[1, 2, 3])
    p_rep.add_argument("--samples", type=int, default=5)
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--json", action="store_true", help="JSON output")
    p_rep.set_defaults(func=_cmd_report)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (
        CliError,
        ShapeError,
        ToleranceError,
        ClusterAmbiguityError,
        ConditioningError,
        DomainError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
