"""Trace one curve and write it as SVG (and optionally CSV).

    python scripts/plot_curve.py --s +---+ --t -++-- --svg n5.svg
"""

import argparse
from pathlib import Path

from exception_curves import export, trace_curve, validate_pair
from exception_curves.curve_analysis import TraceConfig
from exception_curves.polynomial import build_curve_poly


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--s", default="+---+")
    parser.add_argument("--t", default="-++--")
    parser.add_argument("--svg", type=Path, default=Path("curve.svg"))
    parser.add_argument("--csv", type=Path)
    parser.add_argument("--y-step", type=float, default=1e-3)
    args = parser.parse_args()

    pair = validate_pair(args.s, args.t)
    cfg = TraceConfig(y_step=args.y_step)
    points = trace_curve(build_curve_poly(pair), cfg)
    args.svg.write_text(export.curve_svg(points, cfg.y_step, title=f"c(s={pair.s}, t={pair.t})"))
    if args.csv:
        args.csv.write_text(export.points_csv(points))
    print(f"{len(points)} points, {sum(p.in_R for p in points)} in R -> {args.svg}")


if __name__ == "__main__":
    main()
