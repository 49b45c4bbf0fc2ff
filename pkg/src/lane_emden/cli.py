"""Command line front end.

  lane-emden check --n 20 --s 2.5 --p 2
  lane-emden exponents --s 2.5 --n-min 14 --n-max 30 --n-step 1
  lane-emden region --s 2.5 --n-min 14 --n-max 30 --format json
  lane-emden verify --filter coeff.
  lane-emden n0 --s 2.5

Exit codes: 0 success, 1 failed check or partial table, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from contextlib import contextmanager

from .criterion import DomainError, ParamPoint
from .exponents import (
    BracketError,
    N0_GAP_BOUND,
    classify_regime,
    finiteness_boundary,
    n0_threshold,
    pc_exponent,
    pm_exponent,
    sobolev_exponent,
)
from .suite import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ALL_COLUMNS = ("p_s", "p_m", "p_c", "a_ns")
EXPONENT_COLUMNS = ("p_s", "p_c", "a_ns")
REGION_COLUMNS = ("p_s", "p_m", "p_c")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Fixed 15-significant-digit rendering; inf stays inf, None is empty."""
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".15g")
    return str(x)


def json_value(x):
    if isinstance(x, float):
        return None if math.isinf(x) else float(format(x, ".15g"))
    return x


def json_row(row: dict) -> dict:
    out = {}
    for key, value in row.items():
        out[key] = json_value(value)
        if isinstance(value, float) and math.isinf(value):
            out[f"{key}_infinite"] = True
    return out


def _emit_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(row.get(h)) for h in header])
    return buf.getvalue()


def _emit_json(rows) -> str:
    return "".join(json.dumps(json_row(r), ensure_ascii=False) + "\n" for r in rows)


@contextmanager
def _output(path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _check_s(s: float) -> None:
    if not 0 < s <= 3:
        raise UsageError(f"s must lie in (0, 3], got {s}")
    if not 2 < s < 3:
        print(f"warning: s = {s} is outside (2, 3); results are exploratory", file=sys.stderr)


# commands -------------------------------------------------------------------------


def cmd_check(args) -> int:
    _check_s(args.s)
    if not args.n > 2 * args.s:
        raise UsageError(f"need n > 2s, got n={args.n}, s={args.s}")
    if not args.p > 1:
        raise UsageError(f"need p > 1, got p={args.p}")
    verdict = classify_regime(ParamPoint(args.n, args.s, args.p), args.tol_critical)
    F = None if verdict.criterion is None else verdict.criterion.F
    row = {"n": args.n, "s": args.s, "p": args.p, "p_s": sobolev_exponent(args.n, args.s),
           "regime": verdict.regime.value, "F": F, "statement": verdict.statement}
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(_emit_json([row]))
        elif args.format == "csv":
            fh.write(_emit_csv(list(row), [row]))
        else:
            fh.write(f"{verdict.regime.value}: {verdict.statement}\n")
            fh.write(f"p_s = {fmt(row['p_s'])}\n")
            if F is not None:
                fh.write(f"F = {fmt(F)}\n")
    return EXIT_OK


def _grid(n_min: float, n_max: float, step: float) -> list[float]:
    count = int(math.floor((n_max - n_min) / step + 1e-9)) + 1
    return [round(n_min + i * step, 12) for i in range(count)]


def scan_rows(s: float, n_values, columns, tol: float):
    """One dict per n; root-finder failures go into an ``error`` entry."""
    rows = []
    for n in n_values:
        row = {"n": n, "s": s}
        if "p_s" in columns:
            row["p_s"] = sobolev_exponent(n, s)
        if "p_m" in columns:
            row["p_m"] = pm_exponent(n, s)
        if "p_c" in columns or "a_ns" in columns:
            try:
                pc = pc_exponent(n, s, tol)
            except BracketError as exc:
                row["error"] = str(exc)
                pc = None
            if "p_c" in columns:
                row["p_c"] = pc
            if "a_ns" in columns:
                row["a_ns"] = None
                if pc is not None and math.isfinite(pc):
                    row["a_ns"] = (pc * (n - 2 * s - 2) - (n + 2 * s - 2)) / (2 * math.sqrt(n) * (pc - 1))
        rows.append(row)
    return rows


def _parse_columns(text: str | None, default):
    if not text:
        return default
    cols = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in cols if c not in ALL_COLUMNS]
    if bad:
        raise UsageError(f"unknown column(s) {bad}; choose from {','.join(ALL_COLUMNS)}")
    return cols


def cmd_table(args, default_columns) -> int:
    _check_s(args.s)
    if not args.n_min > 2 * args.s:
        raise UsageError(f"need n-min > 2s, got n-min={args.n_min}, s={args.s}")
    if not args.n_step > 0:
        raise UsageError(f"n-step must be positive, got {args.n_step}")
    if args.n_max < args.n_min:
        raise UsageError(f"n-max must be at least n-min, got {args.n_max} < {args.n_min}")
    if not args.tol > 0:
        raise UsageError(f"tol must be positive, got {args.tol}")
    columns = _parse_columns(getattr(args, "columns", None), default_columns)
    rows = scan_rows(args.s, _grid(args.n_min, args.n_max, args.n_step), columns, args.tol)
    failed = any("error" in r for r in rows)
    header = ["n", "s", *columns] + (["error"] if failed else [])
    with _output(args.out) as fh:
        fh.write(_emit_json(rows) if args.format == "json" else _emit_csv(header, rows))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.filter)
    if not report.checks:
        raise UsageError(f"no check id starts with {args.filter!r}")
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write("".join(json.dumps(dict(check_id=c.check_id, anchor=c.anchor, status=c.status,
                                             detail=c.detail)) + "\n" for c in report.checks))
        elif args.format == "csv":
            rows = [dict(check_id=c.check_id, anchor=c.anchor, status=c.status, detail=c.detail)
                    for c in report.checks]
            fh.write(_emit_csv(["check_id", "anchor", "status", "detail"], rows))
        else:
            for c in report.checks:
                fh.write(f"{c.status:<4}  {c.check_id}  [{c.anchor}]  {c.detail}\n")
            passed = sum(c.passed for c in report.checks)
            fh.write(f"{passed}/{len(report.checks)} checks passed\n")
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_n0(args) -> int:
    _check_s(args.s)
    if not args.tol > 0:
        raise UsageError(f"tol must be positive, got {args.tol}")
    tol = min(args.tol, 1e-10)
    n0 = n0_threshold(args.s, tol)
    boundary = finiteness_boundary(args.s, tol)
    bound = 2 * args.s + N0_GAP_BOUND
    in_range = 2 < args.s < 3
    row = {"s": args.s, "n0": n0, "boundary": boundary, "bound": bound,
           "bound_holds": (n0 <= bound) if in_range else None}
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(_emit_json([row]))
        elif args.format == "csv":
            fh.write(_emit_csv(list(row), [row]))
        else:
            fh.write(f"n0({fmt(args.s)}) = {fmt(n0)}\n")
            fh.write(f"p_c finite for n > {fmt(boundary)}\n")
            verdict = ("pass" if row["bound_holds"] else "fail") if in_range else "n/a (s outside (2, 3))"
            fh.write(f"bound 2s + {N0_GAP_BOUND} = {fmt(bound)}: {verdict}\n")
    return EXIT_FAIL if row["bound_holds"] is False else EXIT_OK


# parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lane-emden",
                                 description="Stability thresholds for (-Delta)^s u = |u|^(p-1) u.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json"), default=None):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", default=None, help="write to FILE instead of stdout")

    p = sub.add_parser("check", help="classify one (n, s, p)")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--tol", dest="tol_critical", type=float, default=1e-12,
                   help="relative tolerance for p = p_s")
    common(p)
    p.set_defaults(func=cmd_check)

    for name, cols, text in (("exponents", EXPONENT_COLUMNS, "exponent table over n"),
                             ("region", REGION_COLUMNS, "p_s, p_m and p_c over n")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--s", type=float, required=True)
        p.add_argument("--n-min", type=float, required=True)
        p.add_argument("--n-max", type=float, required=True)
        p.add_argument("--n-step", type=float, default=1.0)
        p.add_argument("--tol", type=float, default=1e-10)
        if name == "exponents":
            p.add_argument("--columns", default=None, help="comma list from p_s,p_m,p_c,a_ns")
        common(p, default="csv")
        p.set_defaults(func=lambda a, cols=cols: cmd_table(a, cols))

    p = sub.add_parser("verify", help="run the exact verification suite")
    p.add_argument("--filter", default=None, help="only check ids with this prefix")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("n0", help="dimension threshold n0(s)")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    common(p)
    p.set_defaults(func=cmd_n0)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
