"""Text serialisation: JSON/CSV with 17 significant digits, SVG curve plots."""

from __future__ import annotations

import json
import math
from typing import Iterable

import numpy as np

from .curve_analysis import ParamPoint, slice_runs


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialise non-finite float {obj!r}")
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def points_csv(points: Iterable[ParamPoint]) -> str:
    lines = ["beta1,beta2,residual,in_R"]
    for p in points:
        lines.append(f"{fmt(p.beta1)},{fmt(p.beta2)},{fmt(p.residual)},{str(p.in_R).lower()}")
    return "\n".join(lines) + "\n"


def samples_text(values) -> str:
    return "".join(fmt(v) + "\n" for v in values)


def catalog_csv(records) -> str:
    lines = ["n,s,t,sufficient_condition,fprime1,intersects_R,beta1,beta2,witness_p,sd,sd_hat"]
    for r in records:
        w, c = r.witness_point, r.certificate
        cells = [
            str(r.n), str(r.pair.s), str(r.pair.t),
            str(r.sufficient_condition).lower(), str(r.fprime1), str(r.intersects_R).lower(),
            fmt(w.beta1) if w else "", fmt(w.beta2) if w else "",
            fmt(c.witness_p) if c else "", fmt(c.sd) if c else "", fmt(c.sd_hat) if c else "",
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


SVG_SIZE = 800


def curve_svg(points: list[ParamPoint], y_step: float, title: str = "") -> str:
    """800x800 plot of (0, 1)^2: R shaded, x + y = 1 dashed, curve as polylines."""
    size = SVG_SIZE

    def xy(b1, b2):
        return f"{b1 * size:.3f},{(1 - b2) * size:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="black"/>',
        f'<polygon points="{xy(0, 1)} {xy(1, 1)} {xy(1, 0)}" fill="#dde8f7" stroke="none"/>',
        f'<line x1="0" y1="0" x2="{size}" y2="{size}" stroke="gray" stroke-dasharray="8,6"/>',
    ]
    if title:
        out.append(f'<title>{title}</title>')
    for run in slice_runs(points, y_step):
        if len(run) == 1:
            p = run[0]
            out.append(f'<circle cx="{p.beta1 * size:.3f}" cy="{(1 - p.beta2) * size:.3f}" r="1"/>')
            continue
        coords = " ".join(xy(p.beta1, p.beta2) for p in run)
        out.append(f'<polyline points="{coords}" fill="none" stroke="black" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
