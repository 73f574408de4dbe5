"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 quantity undefined (no losses
possible), 4 series needs more terms than the cap, 5 output not writable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .erasure_model import CodeParams, q_distribution, residual_loss_probability
from .errors import DomainError, TermsCapExceeded, UndefinedQuantity
from .multiblock import (
    DEFAULT_EPSILON,
    MAX_TERMS,
    baseline_expected_burst,
    expected_burst,
    expected_burst_dp,
    required_terms,
)
from .simulator import SimConfig, simulate
from .single_block import expected_burst_single_block

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_CAP = 4
EXIT_IO = 5

SWEEP_COLUMNS = ["p", "ec_coded", "terms_used", "error_bound", "ec_uncoded", "p_residual"]


class UsageError(Exception):
    pass


def fmt(value) -> str:
    """12 significant digits, ``NA`` for missing values."""
    if value is None:
        return "NA"
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "NA"
    return f"{value:.12g}"


def _jsonable(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def write_csv(rows: list[dict], columns: list[str], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row[c]) for c in columns])


def write_json(payload, out) -> None:
    json.dump(payload, out, indent=2)
    out.write("\n")


def probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise argparse.ArgumentTypeError(f"p out of range [0, 1]: {text}")
    return p


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _params(args) -> CodeParams:
    try:
        return CodeParams(args.n, args.k)
    except DomainError as exc:
        raise UsageError(str(exc))


def cmd_qdist(args, out) -> int:
    dist = q_distribution(_params(args), args.p)
    p_residual = residual_loss_probability(dist)
    if args.format == "json":
        write_json(
            {"n": args.n, "k": args.k, "p": args.p, "q": list(dist.q), "p_residual": p_residual},
            out,
        )
    elif args.format == "csv":
        write_csv([{"i": i, "q": q} for i, q in enumerate(dist.q)], ["i", "q"], out)
        out.write(f"p_L,{fmt(p_residual)}\n")
    else:
        for i, q in enumerate(dist.q):
            out.write(f"Q({i}) = {fmt(q)}\n")
        out.write(f"p_L = {fmt(p_residual)}\n")
    return EXIT_OK


def cmd_burst(args, out) -> int:
    dist = q_distribution(_params(args), args.p)
    if args.mode == "single":
        if args.terms is not None or args.epsilon is not None:
            raise UsageError("--terms/--epsilon only apply to --mode multi")
        record = {"mode": "single", "value": expected_burst_single_block(dist)}
    else:
        if args.terms is not None:
            result = expected_burst_dp(dist, args.terms)
        else:
            epsilon = DEFAULT_EPSILON if args.epsilon is None else args.epsilon
            result = expected_burst(dist, epsilon, max_terms=args.max_terms)
        record = {
            "mode": "multi",
            "value": result.value,
            "terms_used": result.terms_used,
            "error_bound": result.error_bound,
            "value_error_bound": result.value_error_bound,
            "series": result.series,
        }
    if args.format == "json":
        write_json(record, out)
    else:
        for key, value in record.items():
            out.write(f"{key} = {fmt(value)}\n")
    return EXIT_OK


def cmd_required_terms(args, out) -> int:
    rows = []
    for p in args.p:
        dist = q_distribution(_params(args), p)
        row = {"p": p, "q0": dist.q0, "n": None, "error": ""}
        try:
            row["n"] = required_terms(args.n, dist.q0, args.epsilon)
        except DomainError as exc:
            row["error"] = str(exc)
        rows.append(row)
    if args.format == "json":
        write_json([{k: _jsonable(v) for k, v in r.items()} for r in rows], out)
    else:
        write_csv(rows, ["p", "q0", "n", "error"], out)
    return EXIT_OK


def sweep_grid(p_min: float, p_max: float, p_step: float) -> list[float]:
    if p_step <= 0.0:
        raise UsageError("--p-step must be positive")
    if not 0.0 <= p_min <= p_max < 1.0:
        raise UsageError("need 0 <= p-min <= p-max < 1")
    count = int(math.floor((p_max - p_min) / p_step + 1e-9)) + 1
    return [round(p_min + i * p_step, 12) for i in range(count)]


def sweep_rows(params: CodeParams, p_values: list[float], epsilon: float, max_terms: int) -> list[dict]:
    rows = []
    for p in p_values:
        dist = q_distribution(params, p)
        row = {
            "p": p,
            "ec_coded": None,
            "terms_used": None,
            "error_bound": None,
            "ec_uncoded": baseline_expected_burst(p),
            "p_residual": residual_loss_probability(dist),
        }
        if dist.q0 < 1.0:
            result = expected_burst(dist, epsilon, max_terms=max_terms)
            row.update(
                ec_coded=result.value,
                terms_used=result.terms_used,
                error_bound=result.error_bound,
            )
        rows.append(row)
    return rows


def cmd_sweep(args, out) -> int:
    grid = sweep_grid(args.p_min, args.p_max, args.p_step)
    rows = sweep_rows(_params(args), grid, args.epsilon, args.max_terms)
    buffer = io.StringIO()
    if args.format == "json":
        write_json(rows, buffer)
    else:
        write_csv(rows, SWEEP_COLUMNS, buffer)
    if args.out in (None, "-"):
        out.write(buffer.getvalue())
        return EXIT_OK
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(buffer.getvalue())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    if args.blocks < 1:
        raise UsageError("--blocks must be >= 1")
    config = SimConfig(_params(args), args.p, args.blocks, args.seed)
    report = simulate(config)
    record = {"n": args.n, "k": args.k, "p": args.p, "seed": args.seed, **report.as_dict()}
    if args.format == "json":
        write_json({k: _jsonable(v) for k, v in record.items()}, out)
    else:
        for key, value in record.items():
            if isinstance(value, list):
                sep = "; " if key == "diagnostics" else " "
                value = sep.join(fmt(v) for v in value)
            else:
                value = fmt(value)
            out.write(f"{key} = {value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fecburst",
        description="Loss rate and loss burstiness after (N+K, K) block erasure coding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def code_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True, help="data packets per block")
        p.add_argument("--k", type=int, required=True, help="redundancy packets per block")

    qd = sub.add_parser("qdist", help="unrecoverable-loss distribution Q(i) and p_L")
    code_flags(qd)
    qd.add_argument("--p", type=probability, required=True)
    qd.add_argument("--format", choices=["text", "csv", "json"], default="text")
    qd.set_defaults(func=cmd_qdist)

    bu = sub.add_parser("burst", help="expected loss-row length, single block or stream")
    code_flags(bu)
    bu.add_argument("--p", type=probability, required=True)
    bu.add_argument("--mode", choices=["single", "multi"], default="multi")
    stop = bu.add_mutually_exclusive_group()
    stop.add_argument("--epsilon", type=positive_float, help=f"tail bound target (default {DEFAULT_EPSILON})")
    stop.add_argument("--terms", type=int, help="fixed number of series terms")
    bu.add_argument("--max-terms", type=int, default=MAX_TERMS)
    bu.add_argument("--format", choices=["text", "json"], default="text")
    bu.set_defaults(func=cmd_burst)

    rt = sub.add_parser("required-terms", help="series terms needed for a tail bound below epsilon")
    code_flags(rt)
    rt.add_argument("--p", type=probability, nargs="+", required=True)
    rt.add_argument("--epsilon", type=positive_float, default=DEFAULT_EPSILON)
    rt.add_argument("--format", choices=["csv", "json"], default="csv")
    rt.set_defaults(func=cmd_required_terms)

    sw = sub.add_parser("sweep", help="coded vs uncoded burst length over a grid of p")
    code_flags(sw)
    sw.add_argument("--p-min", type=float, required=True)
    sw.add_argument("--p-max", type=float, required=True)
    sw.add_argument("--p-step", type=float, required=True)
    sw.add_argument("--epsilon", type=positive_float, default=DEFAULT_EPSILON)
    sw.add_argument("--max-terms", type=int, default=MAX_TERMS)
    sw.add_argument("--out", help="output file (default stdout)")
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.set_defaults(func=cmd_sweep)

    si = sub.add_parser("simulate", help="Monte Carlo estimate of the same quantities")
    code_flags(si)
    si.add_argument("--p", type=probability, required=True)
    si.add_argument("--blocks", type=int, required=True)
    si.add_argument("--seed", type=int, default=0)
    si.add_argument("--format", choices=["text", "json"], default="text")
    si.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TermsCapExceeded as exc:
        print(f"error: {exc}; pass --terms to truncate explicitly", file=sys.stderr)
        return EXIT_CAP
    except UndefinedQuantity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
