"""Command line front end: ``algser fit|predict|sweep|oracle``.

Coefficient files are UTF-8 text with one decimal number per line; lines
starting with ``#`` and blank lines are ignored. Line order is the index.

Exit codes: 0 ok, 2 insufficient input, 3 singular system, 4 zero
denominator, 5 usage error, 1 anything else.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import mpmath

from .errors import (
    AlgserError,
    CoefficientOverflow,
    InsufficientCoefficients,
    InvalidSpec,
    SingularSystem,
    ZeroDenominator,
)
from .hermite_pade import DegreeSpec, solve_hpp, verify_order
from .oracles import EXAMPLES, PredictionRow, parse_oracle, reference_errors, taylor
from .predictor import PredictionState, predict_k, predict_next
from .series import PowerSeries, as_coeffs

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_INSUFFICIENT = 2
EXIT_SINGULAR = 3
EXIT_ZERO_DENOMINATOR = 4
EXIT_USAGE = 5

DOUBLE_DIGITS = 16


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: Optional[Path] = None
    N: Optional[int] = None
    degrees: Optional[str] = None
    predict: int = 6
    truth: Optional[Path] = None
    digits: int = DOUBLE_DIGITS
    decimals: int = 3
    format: str = "text"
    example: Optional[str] = None
    count: Optional[int] = None
    output: Optional[Path] = None

    @property
    def extended(self) -> bool:
        return self.digits > DOUBLE_DIGITS

    def spec(self) -> DegreeSpec:
        if self.N is None or self.degrees is None:
            raise UsageError("--N and --degrees are required")
        try:
            return DegreeSpec.parse(self.N, self.degrees)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


def read_coefficients(path: Path, extended: bool = False) -> PowerSeries:
    """Parse a coefficient file; mpmath numbers when `extended`."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(mpmath.mpf(line) if extended else float(line))
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: not a number: {line!r}") from exc
    if not values:
        raise UsageError(f"{path}: no coefficients")
    try:
        return PowerSeries(as_coeffs(values))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def fmt_full(x) -> str:
    """Round-trippable text for a coefficient."""
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, mpmath.mp.dps, strip_zeros=False)
    return repr(float(x))


def json_num(x):
    """JSON value for a coefficient: a number, or a string for mpmath values."""
    if x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, mpmath.mpf):
        return fmt_full(x)
    return float(x)


def write_coefficients(coeffs, fh, header: Sequence[str] = ()) -> None:
    for h in header:
        fh.write(f"# {h}\n")
    for c in coeffs:
        fh.write(fmt_full(c) + "\n")


# -- fit ----------------------------------------------------------------------

def _fit(cfg: RunConfig):
    spec = cfg.spec()
    f = read_coefficients(cfg.input, cfg.extended)
    return spec, f, solve_hpp(f, spec)


def cmd_fit(cfg: RunConfig, out) -> int:
    spec, f, hpp = _fit(cfg)
    resid = verify_order(f, hpp, spec)
    max_res = max(abs(r) for r in resid)
    if cfg.format == "json":
        json.dump({
            "spec": {"N": spec.N, "degrees": list(spec.degrees), "M": spec.M},
            "normalization": list(hpp.normalization),
            "polys": [[json_num(c) for c in p] for p in hpp.polys],
            "residuals": [json_num(r) for r in resid],
        }, out, indent=2)
        out.write("\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "j", "p_nj"])
        for n, p in enumerate(hpp.polys):
            for j, c in enumerate(p):
                w.writerow([n, j, fmt_full(c)])
    else:
        n0, j0 = hpp.normalization
        out.write(f"# {spec}  M={spec.M}\n")
        out.write(f"# normalization: p[{n0},{j0}] = 1\n")
        for n, p in enumerate(hpp.polys):
            out.write(f"P_{n}: " + "  ".join(fmt_full(c) for c in p) + "\n")
        out.write(f"max |order residual|: {float(max_res):.3e}\n")
    return EXIT_OK


# -- predict ------------------------------------------------------------------

def _text_table(rows: List[PredictionRow], decimals: int, with_truth: bool) -> str:
    d = decimals
    if not with_truth:
        lines = [f"{'j':>4} {'a_j':>16}"]
        lines += [f"{r.j:>4} {float(r.a_j):>16.{d}f}" for r in rows]
        return "\n".join(lines) + "\n"
    lines = [f"{'j':>4} {'f_j':>16} {'a_j':>16} {'|f_j-a_j|':>16} {'rel. error (%)':>15}"]
    for r in rows:
        rel = "n/a" if r.zero_truth else f"{float(r.rel_err_pct):.2f}"
        lines.append(
            f"{r.j:>4} {float(r.f_j):>16.{d}f} {float(r.a_j):>16.{d}f} "
            f"{float(r.abs_err):>16.{d}f} {rel:>15}"
        )
    return "\n".join(lines) + "\n"


PREDICT_FIELDS = ["j", "f_j", "a_j", "abs_err", "rel_err_pct"]


def _emit_rows(cfg: RunConfig, rows, with_truth: bool, out, meta: dict) -> None:
    fields = PREDICT_FIELDS if with_truth else ["j", "a_j"]
    if cfg.format == "json":
        json.dump({**meta, "rows": [
            {k: json_num(v) for k, v in r.as_dict().items() if k in fields} for r in rows
        ]}, out, indent=2)
        out.write("\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            vals = {"j": r.j, "f_j": fmt_full(r.f_j), "a_j": fmt_full(r.a_j),
                    "abs_err": fmt_full(r.abs_err),
                    "rel_err_pct": "" if r.zero_truth else fmt_full(r.rel_err_pct)}
            w.writerow([vals[k] for k in fields])
    else:
        out.write(f"# {meta['spec']}  M={meta['M']}\n")
        out.write(_text_table(rows, cfg.decimals, with_truth))


def cmd_predict(cfg: RunConfig, out) -> int:
    if cfg.predict < 1:
        raise UsageError("--predict must be >= 1")
    spec, f, hpp = _fit(cfg)
    predicted = predict_k(f, spec, hpp, cfg.predict)
    M = spec.M
    with_truth = cfg.truth is not None
    if with_truth:
        truth = read_coefficients(cfg.truth, cfg.extended)
        if len(truth) < M + cfg.predict:
            raise UsageError(
                f"{cfg.truth} has {len(truth)} coefficients, "
                f"need {M + cfg.predict} to cover the predictions"
            )
        rows = reference_errors(truth, predicted, M)
    else:
        zero = predicted[0] * 0
        rows = [PredictionRow(M + i, zero, a, zero, None) for i, a in enumerate(predicted)]
    _emit_rows(cfg, rows, with_truth, out, {"spec": str(spec), "M": M})
    return EXIT_OK


# -- sweep --------------------------------------------------------------------

def sweep(f: PowerSeries, spec: DegreeSpec) -> List[dict]:
    """One-step predictions on growing prefixes of `f` with a fixed spec.

    For each prefix length L' from M up to ``len(f) - 1`` the polynomials
    are fitted, the predictor is seeded with the whole prefix, and ``a_L'``
    is compared with the known ``f_L'``. A series of exactly M coefficients
    gives a single row without comparison.
    """
    M = spec.M
    if len(f) < M:
        raise InsufficientCoefficients(f"need {M} coefficients, got {len(f)}")
    rows = []
    for prefix in range(M, max(M, len(f) - 1) + 1):
        row = {"prefix": prefix, "j": prefix, "f_j": None, "a_j": None,
               "abs_err": None, "rel_err_pct": None, "status": "ok"}
        try:
            hpp = solve_hpp(f.coeffs[:prefix], spec)
            state = PredictionState.seed(f, hpp, history=prefix)
            a, _ = predict_next(state)
        except (SingularSystem, ZeroDenominator, CoefficientOverflow) as exc:
            row["status"] = f"failed: {type(exc).__name__}"
            rows.append(row)
            continue
        row["a_j"] = a
        if prefix < len(f):
            (r,) = reference_errors(f, [a], prefix)
            row.update(f_j=r.f_j, abs_err=r.abs_err, rel_err_pct=r.rel_err_pct)
        rows.append(row)
    return rows


SWEEP_FIELDS = ["prefix", "j", "f_j", "a_j", "abs_err", "rel_err_pct", "status"]


def cmd_sweep(cfg: RunConfig, out) -> int:
    spec = cfg.spec()
    f = read_coefficients(cfg.input, cfg.extended)
    rows = sweep(f, spec)
    if cfg.format == "json":
        conv = [{k: json_num(v) for k, v in r.items()} for r in rows]
        json.dump({"spec": str(spec), "M": spec.M, "rows": conv}, out, indent=2)
        out.write("\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(SWEEP_FIELDS)
        for r in rows:
            w.writerow(["" if r[k] is None else
                        (fmt_full(r[k]) if k in ("f_j", "a_j", "abs_err", "rel_err_pct") else r[k])
                        for k in SWEEP_FIELDS])
    else:
        d = cfg.decimals
        out.write(f"# {spec}  M={spec.M}  one-step predictions\n")
        out.write(f"{'prefix':>6} {'f_j':>16} {'a_j':>16} {'|f_j-a_j|':>16} "
                  f"{'rel. error (%)':>15}  status\n")

        def num(x, spec_):
            return "" if x is None else format(float(x), spec_)

        for r in rows:
            out.write(f"{r['prefix']:>6} {num(r['f_j'], f'.{d}f'):>16} "
                      f"{num(r['a_j'], f'.{d}f'):>16} {num(r['abs_err'], f'.{d}f'):>16} "
                      f"{num(r['rel_err_pct'], '.2f'):>15}  {r['status']}\n")
    return EXIT_OK


# -- oracle -------------------------------------------------------------------

def cmd_oracle(cfg: RunConfig, out) -> int:
    name = cfg.example
    if not name:
        raise UsageError("oracle needs an example name or expression")
    if cfg.count is None or cfg.count < 1:
        raise UsageError("--count must be >= 1")
    try:
        spec = parse_oracle(name)
    except InvalidSpec as exc:
        raise UsageError(f"unknown example {name!r} (known: {', '.join(EXAMPLES)})") from exc
    dps = cfg.digits if cfg.extended else None
    f = taylor(spec, cfg.count, dps)
    write_coefficients(f.coeffs, out, header=[f"oracle: {name}", f"count: {cfg.count}"])
    return EXIT_OK


COMMANDS = {"fit": cmd_fit, "predict": cmd_predict, "sweep": cmd_sweep, "oracle": cmd_oracle}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="algser", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fit=True):
        p.add_argument("--format", choices=["text", "csv", "json"], default="text")
        p.add_argument("--digits", type=int, default=DOUBLE_DIGITS,
                       help="working precision in decimal digits (>16 uses mpmath)")
        p.add_argument("--output", type=Path, help="write here instead of stdout")
        if fit:
            p.add_argument("--input", type=Path, required=True)
            p.add_argument("--N", type=int, required=True)
            p.add_argument("--degrees", required=True, help="comma separated p_0..p_N")
            p.add_argument("--decimals", type=int, default=3,
                           help="decimals shown in text tables")

    common(sub.add_parser("fit", help="compute Hermite-Padé polynomials"))
    p = sub.add_parser("predict", help="fit once and predict further coefficients")
    common(p)
    p.add_argument("--predict", type=int, default=6)
    p.add_argument("--truth", type=Path)
    common(sub.add_parser("sweep", help="one-step predictions on growing prefixes"))
    p = sub.add_parser("oracle", help="write Taylor coefficients of a test function")
    common(p, fit=False)
    p.add_argument("name", nargs="?", help="ex1, ex2, ex3 or a combinator expression")
    p.add_argument("--example")
    p.add_argument("--count", type=int)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    """Parse `argv`, run the command and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = RunConfig(**{k: v for k, v in vars(args).items()
                       if k in RunConfig.__dataclass_fields__})
    if args.command == "oracle":
        cfg.example = args.example or args.name
    out = out if out is not None else sys.stdout
    buf = io.StringIO()
    prec = mpmath.workdps(cfg.digits) if cfg.extended else contextlib.nullcontext()
    try:
        with prec:
            code = COMMANDS[args.command](cfg, buf)
    except UsageError as exc:
        print(f"algser: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"algser: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InsufficientCoefficients as exc:
        print(f"algser: insufficient coefficients for {_spec_name(cfg)}: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except SingularSystem as exc:
        print(f"algser: singular system for {_spec_name(cfg)}: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except ZeroDenominator as exc:
        print(f"algser: zero denominator for {_spec_name(cfg)}: {exc}", file=sys.stderr)
        return EXIT_ZERO_DENOMINATOR
    except AlgserError as exc:
        print(f"algser: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_OTHER
    if cfg.output is not None:
        cfg.output.write_text(buf.getvalue(), encoding="utf-8")
    else:
        out.write(buf.getvalue())
    return code


def _spec_name(cfg: RunConfig) -> str:
    return f"N={cfg.N} degrees=({cfg.degrees})"


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
