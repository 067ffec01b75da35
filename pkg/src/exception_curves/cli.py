"""Command line interface: ``python -m exception_curves <command> ...``.

Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import export
from .certification import build_catalog, catalog_json, certify_exception
from .combinatorics import DEFAULT_MAX_N, validate_pair
from .curve_analysis import ParamPoint, TraceConfig, intersects_R, trace_curve
from .dimension import (
    exception_window,
    reduced_similarity_dimension,
    sample_measure,
    similarity_dimension,
    solve_d,
)
from .errors import NumericalFailure, ValidationError
from .polynomial import build_curve_poly, evaluate

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _pair(args):
    return validate_pair(args.s, args.t)


def cmd_catalog(args):
    cfg = TraceConfig(y_step=args.y_step)
    records, summaries = build_catalog(args.n_min, args.n_max, cfg, jobs=args.jobs, max_n=args.max_n)
    for s in summaries:
        print(
            f"n={s.n}: ordered={s.ordered_pairs} classes={s.canonical_pairs} "
            f"degenerate={s.degenerate} meet_R={s.intersecting} "
            f"sufficient={s.sufficient} certified={s.certified}"
        )
    for r in records:
        if r.intersects_R:
            w = r.witness_point
            print(f"  n={r.n} s={r.pair.s} t={r.pair.t} point=({w.beta1:.6f}, {w.beta2:.6f})"
                  f" condition={'yes' if r.sufficient_condition else 'no'}")
    if args.json:
        _write(args.json, export.dumps(catalog_json(records, summaries, cfg)))
    if args.csv:
        _write(args.csv, export.catalog_csv(records))
    return EXIT_OK


def cmd_curve(args):
    pair = _pair(args)
    cfg = TraceConfig(y_step=args.y_step)
    poly = build_curve_poly(pair)
    points = trace_curve(poly, cfg)
    best = intersects_R(poly, cfg)
    print(f"F(x, y) = {poly.to_text()}")
    print(f"traced points: {len(points)} (in R: {sum(p.in_R for p in points)})")
    if best is None:
        print("no traced point in R")
    else:
        print(f"most interior point in R: beta1={export.fmt(best.beta1)} beta2={export.fmt(best.beta2)}")
    if args.csv:
        _write(args.csv, export.points_csv(points))
    if args.svg:
        _write(args.svg, export.curve_svg(points, cfg.y_step, title=f"c(s={pair.s}, t={pair.t})"))
    return EXIT_OK


def cmd_certify(args):
    pair = _pair(args)
    cert = certify_exception(pair, TraceConfig(y_step=args.y_step))
    text = export.dumps(cert.to_json())
    if args.json:
        _write(args.json, text)
        p = cert.point
        print(f"certified: beta=({p.beta1:.12f}, {p.beta2:.12f}) p={cert.witness_p:.12f} "
              f"SD={cert.sd:.9f} SDhat={cert.sd_hat:.9f}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dims(args):
    pair = _pair(args)
    b1, b2 = args.beta1, args.beta2
    d = solve_d(b1, b2)
    ps = np.linspace(0, 1, args.p_grid + 2)[1:-1]
    sd = similarity_dimension(b1, b2, ps)
    sdhat = reduced_similarity_dimension(pair, b1, b2, ps)
    residual = float(abs(evaluate(build_curve_poly(pair), b1, b2)))
    summary = {"beta1": b1, "beta2": b2, "d": d, "p_M": b1**d, "curve_residual": residual}
    point = ParamPoint(b1, b2, residual, b1 + b2 > 1)
    try:
        summary["profile"] = exception_window(pair, point).to_json()
    except ValidationError as exc:
        summary["profile"] = None
        summary["profile_error"] = f"{type(exc).__name__}: {exc}"
    lines = ["p,sd,sdhat,exception"]
    for p, a, b in zip(ps, sd, sdhat):
        lines.append(f"{export.fmt(p)},{export.fmt(a)},{export.fmt(b)},{int(a > 1 > b)}")
    _write(args.out, "\n".join(lines) + "\n")
    if args.json:
        _write(args.json, export.dumps(summary))
    return EXIT_OK


def cmd_sample(args):
    samples = sample_measure(args.beta1, args.beta2, args.p, args.n, args.seed)
    _write(args.out, export.samples_text(samples.points))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="exception-curves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_args(p):
        p.add_argument("--s", required=True, help="first word, e.g. '+---+'")
        p.add_argument("--t", required=True, help="second word, e.g. '-++--'")

    p = sub.add_parser("catalog", help="enumerate canonical pairs and test them")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--y-step", type=float, default=1e-3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("curve", help="trace one curve")
    pair_args(p)
    p.add_argument("--svg")
    p.add_argument("--csv")
    p.add_argument("--y-step", type=float, default=1e-3)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("certify", help="produce an exception certificate")
    pair_args(p)
    p.add_argument("--json")
    p.add_argument("--y-step", type=float, default=1e-3)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("dims", help="SD and SDhat over a grid of p")
    pair_args(p)
    p.add_argument("--beta1", type=float, required=True)
    p.add_argument("--beta2", type=float, required=True)
    p.add_argument("--p-grid", type=int, default=1000)
    p.add_argument("--out", help="CSV output (default stdout)")
    p.add_argument("--json", help="summary JSON")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("sample", help="chaos-game samples of the measure")
    p.add_argument("--beta1", type=float, required=True)
    p.add_argument("--beta2", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)
    return parser


def _join_word_options(argv):
    # "--t -++--" would be read as an option; rewrite it as "--t=-++--"
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--s", "--t") and i + 1 < len(argv) and set(argv[i + 1]) <= {"+", "-"} and argv[i + 1]:
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_word_options(argv))
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalFailure as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
