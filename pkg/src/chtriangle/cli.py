"""Command-line surface: classify, scan, tables, galois.

Every command emits a single machine-readable record, either as CSV
(default: header row, comma separators, '.' decimal point, 12 significant
digits, dashes for empty cells) or as JSON with --format json.  Output is
assembled in full and written once.  Exit code 0 on success, 2 on usage
errors and domain refusals.

The CHG_THREADS environment variable caps the worker threads used by the
internally parallel operations (table reproduction).
"""

import argparse
import dataclasses
import io
import json
import math
import re
import sys

from . import __version__
from .classify import classify
from .criteria import (
    DEFAULT_GRID,
    DEFAULT_TOL,
    reproduce_table,
    scan_intervals,
)
from .cyclotomic import (
    DEFAULT_CIRCLE_TOL,
    DEFAULT_NEAR_TOL,
    refute_finite_order,
)
from .triangles import build_mn_inf, build_n_inf_inf, is_infinite

_ANGLE_HELP = "angle as raw radians, 'pi', 'pi/<k>' or 'acos(<float>)'"


class UsageError(Exception):
    pass


def parse_order(text: str):
    """Corner order flag: a positive integer or 'inf'."""
    text = text.strip().lower()
    if text in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"invalid corner order {text!r}: expected an integer or 'inf'")


def parse_angle(text: str) -> float:
    """Angle flag: raw radians, 'pi', 'pi/<k>' or 'acos(<float>)'."""
    s = text.strip().lower().replace(" ", "")
    if s == "pi":
        return math.pi
    m = re.fullmatch(r"pi/(\d+(?:\.\d+)?)", s)
    if m:
        return math.pi / float(m.group(1))
    m = re.fullmatch(r"acos\((.+)\)", s)
    if m:
        try:
            x = float(m.group(1))
        except ValueError:
            raise UsageError(f"invalid angle {text!r}")
        if not -1.0 <= x <= 1.0:
            raise UsageError(f"acos argument must lie in [-1, 1], got {x}")
        return math.acos(x)
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"invalid angle {text!r}: expected {_ANGLE_HELP}")


def _fmt(value) -> str:
    if value is None:
        return "---"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, complex):
        return f"{value.real:.12g}{value.imag:+.12g}j"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else _fmt(value)
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def _emit(record: dict, columns, rows, fmt: str) -> str:
    """Render one output record: CSV shows the tabular results, JSON the
    whole record."""
    if fmt == "json":
        return json.dumps(_jsonable(record), indent=2, allow_nan=False) + "\n"
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(c) for c in row) + "\n")
    return out.getvalue()


def _record(command: str, parameters: dict, tolerances: dict, results) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "tolerances": tolerances,
        "version": __version__,
        "results": results,
    }


def _cmd_classify(args) -> tuple[dict, list, list]:
    m = parse_order(args.m)
    n = parse_order(args.n)
    theta = parse_angle(args.theta)
    word = args.word.strip()
    if not word or any(c not in "123" for c in word):
        raise UsageError("word must be a nonempty string over {1,2,3}")
    if is_infinite(n):
        raise UsageError("n must be finite; pass the single finite order as --n with --m inf")
    if is_infinite(m):
        group = build_n_inf_inf(int(n), theta)
    else:
        group = build_mn_inf(int(m), int(n), theta)
    result = classify(group.word(word))
    record = _record(
        "classify",
        {"m": _fmt(m), "n": int(n), "theta": theta, "word": word},
        {"discriminant_band": 1e-9},
        {
            "word": word,
            "trace": result.trace,
            "discriminant": result.discriminant,
            "isometry_class": result.tag.value,
            "eigenvalues": list(result.eigenvalues),
        },
    )
    columns = ["word", "trace", "discriminant", "isometry_class"]
    rows = [[word, result.trace, result.discriminant, result.tag.value]]
    return record, columns, rows


def _cmd_scan(args) -> tuple[dict, list, list]:
    m = parse_order(args.m)
    n = parse_order(args.n)
    if is_infinite(n):
        raise UsageError("n must be finite; pass --m inf for the family with one finite corner")
    scan = scan_intervals(args.test, m, int(n), grid=args.grid, tol=args.tol)
    record = _record(
        "scan",
        {"test": args.test, "m": _fmt(m), "n": int(n), "grid": args.grid},
        {"endpoint_bracket": args.tol},
        {"intervals": [list(iv) for iv in scan.intervals]},
    )
    columns = ["n", "lo", "hi"]
    rows = [[int(n), lo, hi] for lo, hi in scan.intervals]
    return record, columns, rows


def _cmd_tables(args) -> tuple[dict, list, list]:
    table = reproduce_table(args.which, grid=args.grid, tol=args.tol)
    columns = ["n"]
    for name in table.columns:
        columns.extend([name, name + "_display"])
    rows = []
    json_rows = []
    for row in table.rows:
        out = [row.n]
        jrow = {"n": row.n}
        for name in table.columns:
            value = row.cells[name]
            out.append(value)
            out.append(None if value is None else f"{value:.5f}")
            jrow[name] = value
            jrow[name + "_display"] = None if value is None else f"{value:.5f}"
        rows.append(out)
        json_rows.append(jrow)
    record = _record(
        "tables",
        {"which": args.which, "grid": args.grid},
        {"endpoint_bracket": args.tol, "display_decimals": 5},
        {"columns": list(columns), "rows": json_rows},
    )
    return record, columns, rows


def _cmd_galois(args) -> tuple[dict, list, list]:
    m = parse_order(args.m)
    n = parse_order(args.n)
    if is_infinite(n):
        raise UsageError("n must be finite")
    if not is_infinite(m) and int(m) == int(n):
        raise UsageError(
            "refusing m = n: the equal-order family is covered by prior published "
            "results and is outside this engine's scope"
        )
    report = refute_finite_order(
        m, int(n), max_l=args.max_l, circle_tol=args.tol, near_tol=args.near_tol
    )
    results = _jsonable(report)
    results["overflowed"] = _jsonable(report.overflowed)
    record = _record(
        "galois",
        {"m": _fmt(m), "n": int(n), "max_l": args.max_l},
        {"circle_tol": args.tol, "near_tol": args.near_tol},
        results,
    )
    columns = [
        "kind", "l", "k1", "k2", "k3", "circle_gap", "conductor",
        "max_rightmost", "all_strictly_below", "phi_holds", "note",
    ]
    rows = []
    for s in report.survivors:
        rows.append([
            "survivor", s.candidate.l, *s.candidate.k, s.circle_gap,
            s.conductor, None, None, s.phi.holds, s.note,
        ])
    for t in report.near_misses:
        scan = t.conjugates
        rows.append([
            "near_miss", t.candidate.l, *t.candidate.k, t.circle_gap,
            None if scan is None else scan.conductor,
            None if scan is None else scan.max_rightmost,
            None if scan is None else scan.all_strictly_below,
            t.phi.holds, t.note,
        ])
    note = (
        f"checked={report.candidates_checked}"
        f" elliptic={report.regular_elliptic_candidates}"
        f" survivors={len(report.survivors)}"
        f" near_misses={len(report.near_misses)}"
        f" elapsed={report.elapsed_seconds:.3f}s"
    )
    rows.append(["summary", report.max_l] + [None] * 8 + [note])
    return record, columns, rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chtriangle",
        description=(
            "Complex hyperbolic triangle groups with one ideal corner: "
            "construction, isometry classification, non-discreteness "
            "certificates and parameter-interval scans."
        ),
        epilog=(
            "Environment: CHG_THREADS caps worker threads for table scans "
            "(default: the CPU count)."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--format", choices=("csv", "json"), default="csv",
            help="output format (default: csv)",
        )

    p = sub.add_parser("classify", help="classify the isometry given by a word in the involutions")
    p.add_argument("--m", required=True, help="first corner order (integer >= 3 or 'inf')")
    p.add_argument("--n", required=True, help="second corner order (integer >= 3)")
    p.add_argument("--theta", required=True, help=f"angular invariant; {_ANGLE_HELP}")
    p.add_argument("--word", required=True, help="word over {1,2,3}, e.g. 123 or 3132")
    add_common(p)

    p = sub.add_parser("scan", help="scan a = cos(theta) for intervals where a criterion fires")
    p.add_argument("--test", required=True, choices=("re", "jorgensen", "shimizu"),
                   help="re = regular elliptic product criterion")
    p.add_argument("--m", required=True, help="first corner order (integer >= 3 or 'inf')")
    p.add_argument("--n", required=True, type=str, help="second corner order (integer >= 3)")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID,
                   help=f"scan grid size (default {DEFAULT_GRID})")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help=f"endpoint bracket width (default {DEFAULT_TOL:g})")
    add_common(p)

    p = sub.add_parser("tables", help="recompute one of the three built-in survey tables")
    p.add_argument("which", type=int, choices=(1, 2, 3), help="table index")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID,
                   help=f"scan grid size (default {DEFAULT_GRID})")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help=f"endpoint bracket width (default {DEFAULT_TOL:g})")
    add_common(p)

    p = sub.add_parser("galois", help="refute finite-order regular elliptic traces by enumeration")
    p.add_argument("--m", required=True, help="first corner order (integer >= 3 or 'inf')")
    p.add_argument("--n", required=True, help="second corner order (integer >= 3), must differ from m")
    p.add_argument("--max-l", type=int, default=60, dest="max_l",
                   help="bound on the root-of-unity order l (default 60)")
    p.add_argument("--tol", type=float, default=DEFAULT_CIRCLE_TOL,
                   help=f"strict circle tolerance (default {DEFAULT_CIRCLE_TOL:g})")
    p.add_argument("--near-tol", type=float, default=DEFAULT_NEAR_TOL, dest="near_tol",
                   help=f"near-miss circle tolerance (default {DEFAULT_NEAR_TOL:g})")
    add_common(p)
    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "scan": _cmd_scan,
    "tables": _cmd_tables,
    "galois": _cmd_galois,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, columns, rows = _HANDLERS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"chtriangle {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_emit(record, columns, rows, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
