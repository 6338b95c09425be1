"""Command-line interface: ``tropfit {fit,sweep,eval,oracle,demo}``.

Exit codes: 0 success, 1 malformed input or usage, 2 domain error
(e.g. nonpositive samples under max-algebra), 3 refused oracle instance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .datasets import demo_xy
from .errors import DomainError, GuardError
from .fitter import FitConfig, FitResult, SampleSet, fit, predict, sample_residuals, sweep
from .oracle import MAX_ORACLE_SAMPLES, exact_fit
from .semifield import Semifield

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable or malformed input file or arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def read_csv(path: str, min_cols: int = 2) -> list[list[float]]:
    """Numeric rows of a CSV file; '#' comments, blank lines and a header row are skipped."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in row if c.strip()]
        try:
            values = [float(c) for c in cells]
        except ValueError:
            if not rows and all(c.lower() in ("x", "y") for c in cells):
                continue  # header
            raise InputError(f"{path}:{lineno}: non-numeric row {row!r}") from None
        if len(values) < min_cols:
            raise InputError(f"{path}:{lineno}: expected at least {min_cols} columns")
        rows.append(values)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def load_samples(path: str, algebra: Semifield) -> SampleSet:
    rows = read_csv(path, 2)
    if any(len(r) != 2 for r in rows):
        raise InputError(f"{path}: sample files need exactly two columns x,y")
    data = np.asarray(rows, dtype=float)
    return SampleSet(data[:, 0], data[:, 1], algebra)


def parse_terms(text: str) -> tuple[int, int]:
    """``"5"`` or ``"2..12"`` (also ``2-12`` / ``2:12``)."""
    for sep in ("..", ":", "-"):
        if sep in text:
            a, b = text.split(sep, 1)
            break
    else:
        a = b = text
    try:
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid term count {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"term range must satisfy 1 <= min <= max, got {text!r}")
    return lo, hi


def _emit(payload: str, output: Optional[str]) -> None:
    if output in (None, "-"):
        sys.stdout.write(payload)
    else:
        Path(output).write_text(payload)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _single_terms(args) -> int:
    lo, hi = args.terms
    if lo != hi:
        raise InputError(f"{args.command} takes a single term count, got {lo}..{hi}")
    return lo


def curve_rows(result: FitResult, samples: SampleSet, n_points: int, x_range=None) -> list[tuple]:
    """Plot data: the fitted curve on a grid, interleaved with the samples.

    Rows are ``(x, fit, sample)`` sorted by x; ``sample`` is None on grid rows.
    """
    lo, hi = x_range if x_range is not None else (float(samples.xs.min()), float(samples.xs.max()))
    grid = np.linspace(lo, hi, n_points) if n_points > 1 else np.array([lo])
    rows = [(float(x), float(v), None) for x, v in zip(grid, predict(result, grid))]
    fitted = predict(result, samples.xs)
    rows += [(float(x), float(v), float(y)) for x, v, y in zip(samples.xs, fitted, samples.ys)]
    rows.sort(key=lambda r: (r[0], r[2] is not None))
    return rows


def _write_curve(path: str, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "fit", "sample"])
    for x, v, y in rows:
        w.writerow([repr(x), repr(v), "" if y is None else repr(y)])
    _emit(buf.getvalue(), path)


def cmd_fit(args) -> int:
    samples = load_samples(args.input, args.algebra)
    result = fit(samples, FitConfig(_single_terms(args)))
    _emit(_dump(result.to_dict()), args.output)
    if args.curve:
        if args.curve_samples < 1:
            raise InputError("--curve-samples must be positive")
        _write_curve(args.curve, curve_rows(result, samples, args.curve_samples, args.curve_range))
    return EXIT_OK


def cmd_sweep(args) -> int:
    samples = load_samples(args.input, args.algebra)
    lo, hi = args.terms
    table = sweep(samples, lo, hi)
    payload = {
        "algebra": args.algebra.value,
        "sweep": [{"n_terms": n, "delta_star": d} for n, d in table],
    }
    _emit(_dump(payload), args.output)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n_terms", "delta_star"])
        for n, d in table:
            w.writerow([n, repr(d)])
        _emit(buf.getvalue(), args.csv)
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        model = FitResult.from_dict(json.loads(Path(args.model).read_text()))
    except OSError as exc:
        raise InputError(f"cannot read {args.model}: {exc.strerror or exc}") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.model}: not a fit result ({exc})") from None
    ys = None
    if args.input:
        rows = read_csv(args.input, 1)
        if len({len(r) for r in rows}) != 1 or len(rows[0]) > 2:
            raise InputError(f"{args.input}: expected one column x or two columns x,y")
        data = np.asarray(rows, dtype=float)
        xs = data[:, 0]
        ys = data[:, 1] if data.shape[1] == 2 else None
    elif args.x:
        xs = np.asarray(args.x, dtype=float)
    else:
        raise InputError("eval needs abscissas: --x values or --input file")
    out = {
        "algebra": model.algebra.value,
        "x": xs.tolist(),
        "prediction": np.atleast_1d(predict(model, xs)).tolist(),
    }
    if ys is not None:
        res = sample_residuals(model.algebra, model.exponents, model.coefficients, xs, ys)
        out["residuals"] = res.tolist()
        out["error"] = float(res.max())
    _emit(_dump(out), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    samples = load_samples(args.input, args.algebra)
    result = exact_fit(samples, _single_terms(args), max_samples=args.max_samples)
    _emit(_dump(result.to_dict(args.algebra.value)), args.output)
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.samples < 1:
        raise InputError("--samples must be positive")
    xs, ys = demo_xy(args.samples)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    for x, y in zip(xs, ys):
        w.writerow([repr(float(x)), repr(float(y))])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def _algebra(text: str) -> Semifield:
    try:
        return Semifield.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown algebra {text!r} (max-plus or max-algebra)") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropfit", description="Fit tropical Puiseux polynomials to sampled data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, terms_help):
        p.add_argument("input", help="CSV file with columns x,y ('-' for stdin)")
        p.add_argument("--algebra", type=_algebra, default=Semifield.MAX_PLUS,
                       help="max-plus (default) or max-algebra")
        p.add_argument("--terms", "-n", type=parse_terms, required=True, help=terms_help)
        p.add_argument("--output", "-o", help="output JSON path (default stdout)")

    p = sub.add_parser("fit", help="fit a polynomial with N monomials")
    common(p, "number of monomials N")
    p.add_argument("--curve", help="write plot data (x, fit, sample) as CSV to this path")
    p.add_argument("--curve-samples", type=int, default=400, help="grid points for --curve (default 400)")
    p.add_argument("--curve-range", type=float, nargs=2, metavar=("MIN", "MAX"),
                   help="grid range for --curve (default: data hull)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sweep", help="squared error for a range of monomial counts")
    common(p, "range of N, e.g. 2..12")
    p.add_argument("--csv", help="also write the table as CSV to this path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eval", help="evaluate a fitted model")
    p.add_argument("model", help="JSON written by 'tropfit fit'")
    p.add_argument("--x", type=float, nargs="+", help="abscissas to evaluate at")
    p.add_argument("--input", "-i", help="CSV of x (and optionally y, to get residuals)")
    p.add_argument("--output", "-o", help="output JSON path (default stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="exact partition search (small inputs only)")
    common(p, "number of monomials N")
    p.add_argument("--max-samples", type=int, default=MAX_ORACLE_SAMPLES,
                   help=f"refuse inputs larger than this (default {MAX_ORACLE_SAMPLES})")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("demo", help="write the bundled demo dataset as CSV")
    p.add_argument("--samples", "-m", type=int, default=21, help="number of samples (default 21)")
    p.add_argument("--output", "-o", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_demo)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"tropfit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"tropfit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except DomainError as exc:
        print(f"tropfit: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
