"""Similarity dimensions of the two-map system and of its merged n-fold iterate.

For weights ``(p, 1 - p)`` on ``T1(x) = b1 x + b1`` and ``T2(x) = b2 x - b2``

    SD(p) = H(p) / chi(p),   chi(p) = -p log b1 - (1 - p) log b2,

with H the binary entropy in nats. On a curve ``c_{s,t}`` the n-fold words
s and t give the same map, so the n-fold system can be merged into one with
2^n - 1 maps. Its similarity dimension ``SDhat`` is strictly below SD.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import SeqPair
from .curve_analysis import ON_CURVE_TOL, ParamPoint
from .errors import NotInR, NotOnCurve, OutOfDomain, PairTooLong, WindowNotFound
from .polynomial import build_curve_poly, evaluate

LOG2 = math.log(2.0)
BRUTE_MAX_N = 24


def _open_unit(name, value):
    arr = np.asarray(value, dtype=float)
    if not np.all((arr > 0) & (arr < 1)):
        raise OutOfDomain(f"{name} must lie strictly inside (0, 1), got {value!r}")
    return arr


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def binary_entropy(p):
    p = _open_unit("p", p)
    return _scalar(-p * np.log(p) - (1 - p) * np.log1p(-p))


def lyapunov(beta1, beta2, p):
    """Mean log-contraction ``chi = -p log b1 - (1 - p) log b2`` (positive)."""
    b1 = _open_unit("beta1", beta1)
    b2 = _open_unit("beta2", beta2)
    p = _open_unit("p", p)
    return _scalar(-p * np.log(b1) - (1 - p) * np.log(b2))


def similarity_dimension(beta1, beta2, p):
    return _scalar(np.asarray(binary_entropy(p)) / np.asarray(lyapunov(beta1, beta2, p)))


def word_probability(ones: int, n: int, p):
    p = np.asarray(p, dtype=float)
    return p**ones * (1 - p) ** (n - ones)


def merged_probability(pair: SeqPair, p):
    """Total weight ``p_{s,t}`` of the two coinciding n-fold words."""
    p = _open_unit("p", p)
    return _scalar(2.0 * word_probability(pair.s.ones, pair.n, p))


def _merged_entropy_closed(pair, p):
    return pair.n * np.asarray(binary_entropy(p)) - 2.0 * word_probability(pair.s.ones, pair.n, p) * LOG2


def _merged_entropy_brute(pair, p):
    if pair.n > BRUTE_MAX_N:
        raise PairTooLong(f"brute enumeration limited to n <= {BRUTE_MAX_N}, got {pair.n}")
    p = np.asarray(p, dtype=float)
    skip = {pair.s.entries, pair.t.entries}
    total = np.zeros_like(p)
    for word in itertools.product((-1, 1), repeat=pair.n):
        if word in skip:
            continue
        w = word_probability(word.count(1), pair.n, p)
        total -= w * np.log(w)
    merged = 2.0 * word_probability(pair.s.ones, pair.n, p)
    return total - merged * np.log(merged)


def reduced_similarity_dimension(pair: SeqPair, beta1, beta2, p, method: str = "closed"):
    """Similarity dimension of the merged n-fold system.

    ``method="brute"`` sums over all 2^n words; ``method="closed"`` uses
    ``n H(p) - 2 P(s) log 2``. Both divide by ``n * chi``, the mean
    log-contraction of an n-fold word.
    """
    chi = np.asarray(lyapunov(beta1, beta2, p))
    p = np.asarray(p, dtype=float)
    if method == "closed":
        entropy = _merged_entropy_closed(pair, p)
    elif method == "brute":
        entropy = _merged_entropy_brute(pair, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _scalar(entropy / (pair.n * chi))


def solve_d(beta1: float, beta2: float, tol: float = 1e-13) -> float:
    """The exponent d > 0 with ``beta1**d + beta2**d == 1``.

    ``d -> beta1**d + beta2**d`` decreases strictly from 2 to 0, so the root is
    unique; it is bracketed by doubling and found by bisection.
    """
    b1 = float(_open_unit("beta1", beta1))
    b2 = float(_open_unit("beta2", beta2))
    g = lambda d: b1**d + b2**d - 1.0  # noqa: E731
    lo, hi = 0.0, 1.0
    while g(hi) > 0:
        lo, hi = hi, 2 * hi
    return _bisect_scalar(g, lo, hi, tol)


def _bisect_scalar(f, a, b, tol, max_iter=200):
    fa = f(a)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _scan_grid(lo, hi, step):
    grid = np.arange(lo, hi, step)
    if grid.size == 0 or grid[-1] < hi:
        grid = np.append(grid, hi)
    return grid


@dataclass(frozen=True)
class DimensionProfile:
    pair: SeqPair
    point: ParamPoint
    d: float
    p_M: float
    sd_roots: tuple[float, ...]
    window: tuple[float, float] | None
    witness_p: float | None
    sd_at_witness: float | None = None
    sdhat_at_witness: float | None = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "pair": {"s": str(self.pair.s), "t": str(self.pair.t)},
            "beta1": self.point.beta1,
            "beta2": self.point.beta2,
            "d": self.d,
            "p_M": self.p_M,
            "sd_roots": list(self.sd_roots),
            "window": None if self.window is None else {"lo": self.window[0], "hi": self.window[1]},
            "witness_p": self.witness_p,
            "sd_at_witness": self.sd_at_witness,
            "sdhat_at_witness": self.sdhat_at_witness,
        }


def sd_unit_roots(beta1, beta2, lo, hi, step=1e-3, tol=1e-12):
    """Roots of SD(p) = 1 in [lo, hi] found by scanning plus bisection.

    The grid is the uniform ``step`` grid with extra geometric points within
    ``step`` of 0 and 1 so roots close to either end are bracketed too.
    """
    f = lambda q: similarity_dimension(beta1, beta2, q) - 1.0  # noqa: E731
    grid = _scan_grid(lo, hi, step)
    small = 10.0 ** -np.arange(15, 2, -1)
    small = np.concatenate([small, 1.0 - small])
    grid = np.unique(np.concatenate([small[(small > lo) & (small < hi)], grid]))
    grid = grid[(grid > 0) & (grid < 1)]
    vals = np.asarray(f(grid))
    roots = []
    for k in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        roots.append(_bisect_scalar(f, grid[k], grid[k + 1], tol))
    roots.extend(float(q) for q in grid[vals == 0])
    return sorted(roots)


def _window_next_to(g, anchor, limit, step, tol):
    """Window between an SD = 1 root ``anchor`` and the nearest SDhat = 1
    crossing on the way to ``limit`` (``limit`` itself if none)."""
    if not g(anchor) < 0:
        return None
    direction = 1.0 if limit > anchor else -1.0
    grid = anchor + direction * np.arange(0.0, abs(limit - anchor), step)
    grid = np.append(grid, limit)
    vals = np.asarray(g(grid))
    crossing = np.nonzero(vals >= 0)[0]
    if crossing.size:
        k = crossing[0]
        end = grid[k] if vals[k] == 0 else _bisect_scalar(g, grid[k - 1], grid[k], tol)
    else:
        end = limit
    lo, hi = sorted((float(anchor), float(end)))
    return (lo, hi) if hi > lo else None


def exception_window(
    pair: SeqPair, point: ParamPoint, step: float = 1e-3, tol: float = 1e-12
) -> DimensionProfile:
    """Weights p with SD(p) > 1 but SDhat(p) < 1 at an R-point of ``c_{s,t}``.

    SD exceeds 1 between p1 (largest root of SD = 1 below p_M = beta1**d)
    and p1' (smallest root above p_M). Next to each of these roots SDhat is
    still below 1; the window runs from the root to the first crossing of
    SDhat = 1 (or to p_M). Both sides are tried and the window whose midpoint
    has the larger margin ``min(SD - 1, 1 - SDhat)`` wins.
    """
    if not point.in_R:
        raise NotInR(f"({point.beta1}, {point.beta2}) does not satisfy beta1 + beta2 > 1")
    b1, b2 = point.beta1, point.beta2
    residual = max(point.residual, float(abs(evaluate(build_curve_poly(pair), b1, b2))))
    if residual > ON_CURVE_TOL:
        raise NotOnCurve(f"|F(beta1, beta2)| = {residual:.3g} exceeds {ON_CURVE_TOL}")

    d = solve_d(b1, b2)
    p_M = b1**d
    diagnostics = {"d": d, "p_M": p_M, "sd_at_p_M": similarity_dimension(b1, b2, p_M)}
    below = [r for r in sd_unit_roots(b1, b2, 0.0, p_M, step, tol) if r < p_M]
    above = [r for r in sd_unit_roots(b1, b2, p_M, 1.0, step, tol) if r > p_M]
    sd_roots = tuple(float(r) for r in below[-1:] + above[:1])
    diagnostics["sd_roots"] = sd_roots
    if not sd_roots:
        raise WindowNotFound("no root of SD = 1 found in (0, 1)", diagnostics)

    g = lambda q: reduced_similarity_dimension(pair, b1, b2, q) - 1.0  # noqa: E731
    best = None
    for anchor in sd_roots:
        window = _window_next_to(g, anchor, p_M, step, tol)
        if window is None:
            continue
        witness = 0.5 * (window[0] + window[1])
        sd_w = similarity_dimension(b1, b2, witness)
        sdhat_w = reduced_similarity_dimension(pair, b1, b2, witness)
        margin = min(sd_w - 1.0, 1.0 - sdhat_w)
        diagnostics.setdefault("candidates", []).append((window, margin))
        if margin > 0 and (best is None or margin > best[0]):
            best = (margin, window, witness, sd_w, sdhat_w)
    if best is None:
        raise WindowNotFound("no p with SD > 1 > SDhat found next to the SD = 1 roots", diagnostics)
    _, window, witness, sd_w, sdhat_w = best
    return DimensionProfile(
        pair=pair,
        point=point,
        d=d,
        p_M=p_M,
        sd_roots=sd_roots,
        window=window,
        witness_p=float(witness),
        sd_at_witness=sd_w,
        sdhat_at_witness=sdhat_w,
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class AffineMap:
    """``x -> slope * x + offset`` with a contracting positive slope."""

    slope: float
    offset: float

    def __post_init__(self):
        if not 0 < self.slope < 1:
            raise OutOfDomain(f"slope must lie in (0, 1), got {self.slope}")

    def __call__(self, x):
        return self.slope * x + self.offset

    @property
    def fixed_point(self) -> float:
        return self.offset / (1 - self.slope)


def base_maps(beta1: float, beta2: float) -> tuple[AffineMap, AffineMap]:
    _open_unit("beta1", beta1)
    _open_unit("beta2", beta2)
    return AffineMap(beta1, beta1), AffineMap(beta2, -beta2)


@dataclass(frozen=True)
class SampleSet:
    points: np.ndarray
    seed: int
    params: tuple[float, float, float]

    def hull(self) -> tuple[float, float]:
        b1, b2, _ = self.params
        return -b2 / (1 - b2), b1 / (1 - b1)


BURN_IN = 64


def sample_measure(beta1, beta2, p, N: int, seed: int) -> SampleSet:
    """Chaos-game orbit of the self-similar measure, started at 0.

    One long orbit; the first 64 iterates are discarded and every later
    iterate is recorded.
    """
    t1, t2 = base_maps(beta1, beta2)
    _open_unit("p", p)
    if N < 0:
        raise ValueError("N must be non-negative")
    if seed < 0:
        raise ValueError("seed must be unsigned")
    lo, hi = t2.fixed_point, t1.fixed_point
    rng = np.random.default_rng(seed)
    choose_first = rng.random(BURN_IN + N) < p
    out = np.empty(N)
    x = 0.0
    for k, first in enumerate(choose_first):
        x = t1.slope * x + t1.offset if first else t2.slope * x + t2.offset
        if k >= BURN_IN:
            out[k - BURN_IN] = x
    # rounding can carry an orbit one ulp past a fixed point
    np.clip(out, lo, hi, out=out)
    return SampleSet(out, seed, (float(beta1), float(beta2), float(p)))
