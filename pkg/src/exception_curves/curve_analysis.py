"""Locating exception curves inside the unit square.

Zero sets are realised numerically: each horizontal slice ``y = const`` is
scanned on a uniform x-grid for sign changes, and every bracket is polished
by bisection. This is a semi-decision procedure. Tangential zeros (no sign
change) can be missed; a local refinement pass around near-zero minima of
``|F|`` reduces, but does not remove, that risk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import SeqPair
from .errors import DegenerateCurve, InvalidSlice, ValidationError
from .polynomial import BiPoly, build_curve_poly, derivative_at_one, evaluate, restrict_y1

ON_CURVE_TOL = 1e-9
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class TraceConfig:
    y_step: float = 1e-3
    bisection_tol: float = 1e-12
    max_roots_per_slice: int = 16
    refine_step: float = 1e-4
    refine_threshold: float = 1e-2

    def __post_init__(self):
        if not 0 < self.y_step < 1:
            raise ValidationError(f"y_step must lie in (0, 1), got {self.y_step}")
        if not self.bisection_tol > 0:
            raise ValidationError("bisection_tol must be positive")
        if self.max_roots_per_slice < 1:
            raise ValidationError("max_roots_per_slice must be >= 1")
        if not 0 < self.refine_step <= self.y_step:
            raise ValidationError("refine_step must lie in (0, y_step]")


@dataclass(frozen=True)
class ParamPoint:
    """A parameter point (beta1, beta2) in the open unit square."""

    beta1: float
    beta2: float
    residual: float
    in_R: bool

    def __post_init__(self):
        if not (0 < self.beta1 < 1 and 0 < self.beta2 < 1):
            raise ValidationError(
                f"point ({self.beta1}, {self.beta2}) is not in the open unit square"
            )
        if not self.residual >= 0:
            raise ValidationError("residual must be non-negative")
        if bool(self.in_R) != (self.beta1 + self.beta2 > 1):
            raise ValidationError("in_R flag inconsistent with beta1 + beta2 > 1")

    @classmethod
    def on(cls, poly: BiPoly, beta1: float, beta2: float) -> "ParamPoint":
        """Build the point with residual ``|F(beta1, beta2)|`` filled in."""
        beta1, beta2 = float(beta1), float(beta2)
        return cls(beta1, beta2, float(abs(evaluate(poly, beta1, beta2))), beta1 + beta2 > 1)

    def reflect(self) -> "ParamPoint":
        return ParamPoint(self.beta2, self.beta1, self.residual, self.in_R)


def check_sufficient_condition(pair: SeqPair) -> tuple[bool, int]:
    """Prefix test plus the sign of f'(1) for the curve through (x, 1).

    Returns ``(holds, fprime1)`` with ``fprime1 = sum s_k #_k(s) - sum t_k #_k(t)``.
    """
    s, t = pair.s, pair.t
    fprime1 = sum(e * a for e, a in zip(s.entries, s.prefix_ones)) - sum(
        e * a for e, a in zip(t.entries, t.prefix_ones)
    )
    prefixes = s.entries[:2] == (1, -1) and t.entries[:2] == (-1, 1)
    return prefixes and fprime1 > 0, fprime1


def boundary_facts(pair: SeqPair) -> dict[str, int]:
    """f(0), f(1) and f'(1) of the restriction f(x) = F(x, 1), exactly."""
    f = restrict_y1(build_curve_poly(pair))
    return {"f0": f(0), "f1": f(1), "fprime1": derivative_at_one(f)}


def _bisect(poly, a, b, y, tol):
    """Vectorised bisection on brackets ``[a, b]`` at heights ``y``."""
    a = a.astype(float).copy()
    b = b.astype(float).copy()
    fa = evaluate(poly, a, y)
    while a.size and np.max(b - a) > tol:
        m = 0.5 * (a + b)
        fm = evaluate(poly, m, y)
        left = np.sign(fm) == np.sign(fa)
        a = np.where(left, m, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, m)
        hit = fm == 0
        a = np.where(hit, m, a)
        b = np.where(hit, m, b)
    return 0.5 * (a + b)


def _scan(poly, ys, x_lo, x_hi, x_step, cfg):
    """Roots of x -> F(x, y) in [x_lo, x_hi] for each y in ``ys``.

    Returns (y, x, residual) arrays plus the value grid used for the scan.
    """
    count = max(1, int(round((x_hi - x_lo) / x_step)))
    xs = np.linspace(x_lo, x_hi, count + 1)
    grid = evaluate(poly, xs[None, :], ys[:, None])
    rows, cols = np.nonzero(grid[:, :-1] * grid[:, 1:] < 0)
    x = _bisect(poly, xs[cols], xs[cols + 1], ys[rows], cfg.bisection_tol)
    zr, zc = np.nonzero(grid == 0)
    y = np.concatenate([ys[rows], ys[zr]])
    x = np.concatenate([x, xs[zc]])
    keep = (x > BOUNDARY_TOL) & (x < 1 - BOUNDARY_TOL)
    y, x = y[keep], x[keep]
    residual = np.abs(evaluate(poly, x, y))
    return y, x, residual, xs, grid


def _cap_per_slice(y, x, residual, limit):
    order = np.lexsort((x, y))
    y, x, residual = y[order], x[order], residual[order]
    if y.size == 0:
        return y, x, residual
    # rank of each root inside its slice
    starts = np.r_[0, np.nonzero(np.diff(y))[0] + 1]
    rank = np.arange(y.size) - np.repeat(starts, np.diff(np.r_[starts, y.size]))
    keep = rank < limit
    return y[keep], x[keep], residual[keep]


def solve_x_given_y(poly: BiPoly, y: float, cfg: TraceConfig | None = None) -> list[float]:
    """Sorted roots in (0, 1) of ``x -> F(x, y)`` found by sign-change scanning."""
    cfg = cfg or TraceConfig()
    if not 0 < y < 1:
        raise InvalidSlice(f"slice height must lie in (0, 1), got {y}")
    ys, xs, res, _, _ = _scan(poly, np.array([float(y)]), 0.0, 1.0, cfg.y_step, cfg)
    ys, xs, res = _cap_per_slice(ys, xs, res, cfg.max_roots_per_slice)
    return [float(v) for v in xs]


def _refinement_windows(xs, ys, grid, cfg):
    """Near-zero local minima of |F| along slices without a nearby sign change."""
    mag = np.abs(grid)
    sgn = np.sign(grid)
    mid = mag[:, 1:-1]
    is_min = (mid <= mag[:, :-2]) & (mid <= mag[:, 2:]) & (mid < cfg.refine_threshold)
    same_sign = (sgn[:, :-2] == sgn[:, 1:-1]) & (sgn[:, 1:-1] == sgn[:, 2:]) & (sgn[:, 1:-1] != 0)
    rows, cols = np.nonzero(is_min & same_sign)
    return [(ys[r], xs[c], xs[c + 2]) for r, c in zip(rows, cols)]


def trace_points(poly: BiPoly, cfg: TraceConfig | None = None):
    """Array form of :func:`trace_curve`: (beta1, beta2, residual), ordered by (y, x)."""
    cfg = cfg or TraceConfig()
    if poly.is_zero():
        raise DegenerateCurve("cannot trace the zero polynomial")
    count = int(round(1 / cfg.y_step))
    ys = np.arange(1, count) * cfg.y_step
    ys = ys[(ys > BOUNDARY_TOL) & (ys < 1 - BOUNDARY_TOL)]
    y, x, res, xs, grid = _scan(poly, ys, 0.0, 1.0, cfg.y_step, cfg)
    y, x, res = _cap_per_slice(y, x, res, cfg.max_roots_per_slice)
    parts = [(y, x, res)]
    offsets = np.arange(-(int(round(cfg.y_step / cfg.refine_step)) - 1),
                        int(round(cfg.y_step / cfg.refine_step))) * cfg.refine_step
    for y0, lo, hi in _refinement_windows(xs, ys, grid, cfg):
        local = y0 + offsets
        local = local[(local > BOUNDARY_TOL) & (local < 1 - BOUNDARY_TOL) & (offsets != 0)]
        ry, rx, rres, _, _ = _scan(poly, local, lo, hi, cfg.refine_step, cfg)
        parts.append((ry, rx, rres))
    y = np.concatenate([p[0] for p in parts])
    x = np.concatenate([p[1] for p in parts])
    res = np.concatenate([p[2] for p in parts])
    order = np.lexsort((x, y))
    y, x, res = y[order], x[order], res[order]
    if y.size:
        # refinement windows may overlap; drop exact duplicates
        dup = np.r_[False, (np.diff(y) == 0) & (np.abs(np.diff(x)) <= 2 * cfg.bisection_tol)]
        y, x, res = y[~dup], x[~dup], res[~dup]
    return x, y, res


def trace_curve(poly: BiPoly, cfg: TraceConfig | None = None) -> list[ParamPoint]:
    x, y, res = trace_points(poly, cfg)
    return [
        ParamPoint(float(a), float(b), float(r), bool(a + b > 1))
        for a, b, r in zip(x, y, res)
    ]


def r_candidates(poly: BiPoly, cfg: TraceConfig | None = None) -> list[ParamPoint]:
    """Traced on-curve points inside R, most interior first.

    "Most interior" maximises beta1 + beta2; ties go to the smallest beta2.
    """
    x, y, res = trace_points(poly, cfg)
    ok = (x + y > 1) & (res <= ON_CURVE_TOL)
    x, y, res = x[ok], y[ok], res[ok]
    order = np.lexsort((y, -(x + y)))
    return [ParamPoint(float(x[k]), float(y[k]), float(res[k]), True) for k in order]


def intersects_R(poly: BiPoly, cfg: TraceConfig | None = None) -> ParamPoint | None:
    """Most interior traced point of the curve inside R, or None."""
    candidates = r_candidates(poly, cfg)
    return candidates[0] if candidates else None


def pair_intersects_R(pair: SeqPair, cfg: TraceConfig | None = None) -> ParamPoint | None:
    return intersects_R(build_curve_poly(pair), cfg)


def slice_runs(points: list[ParamPoint], y_step: float, max_jump: float = 0.05):
    """Group traced points into polylines, linking roots on adjacent slices.

    Greedy: each root continues the open run whose last point sits on the
    previous slice and is closest in x, if within ``max_jump``.
    """
    by_y: dict[float, list[ParamPoint]] = {}
    for p in points:
        by_y.setdefault(p.beta2, []).append(p)
    runs: list[list[ParamPoint]] = []
    open_runs: list[list[ParamPoint]] = []
    prev_y = None
    for y in sorted(by_y):
        adjacent = prev_y is not None and y - prev_y <= 1.5 * y_step
        candidates = open_runs if adjacent else []
        next_open = []
        for p in sorted(by_y[y], key=lambda q: q.beta1):
            best = None
            for run in candidates:
                gap = abs(run[-1].beta1 - p.beta1)
                if gap <= max_jump and (best is None or gap < abs(best[-1].beta1 - p.beta1)):
                    best = run
            if best is not None:
                candidates = [r for r in candidates if r is not best]
                best.append(p)
                next_open.append(best)
            else:
                run = [p]
                runs.append(run)
                next_open.append(run)
        open_runs = next_open
        prev_y = y
    return runs
