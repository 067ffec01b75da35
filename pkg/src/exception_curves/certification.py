"""Exception certificates and the pair catalog.

A certificate bundles a pair ``(s, t)``, a point of ``c_{s,t}`` inside R at
which the n-fold maps ``T_s`` and ``T_t`` coincide, and a weight p with
``SD(p) > 1`` and ``SDhat(p) < 1``. It is a residual-based numerical witness,
not a proof.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import __version__
from .combinatorics import (
    DEFAULT_MAX_N,
    SeqPair,
    as_signseq,
    canonical_form,
    enumerate_pairs_with_stats,
    orbit,
    validate_pair,
)
from .curve_analysis import (
    ON_CURVE_TOL,
    ParamPoint,
    TraceConfig,
    check_sufficient_condition,
    intersects_R,
    r_candidates,
)
from .dimension import (
    AffineMap,
    base_maps,
    exception_window,
    reduced_similarity_dimension,
    similarity_dimension,
)
from .errors import LimitExceeded, NoIntersectionWithR, NumericalFailure, TooShort, WindowNotFound
from .polynomial import build_curve_poly, evaluate

MARGIN = 1e-6
WINDOW_STEP = 1e-3
WINDOW_TOL = 1e-12

# Pairs whose curves are known to meet R: one of length 5, four of length 6.
KNOWN_EXCEPTION_PAIRS = (
    ("+---+", "-++--"),
    ("+--+++", "-++++-"),
    ("+-+-++", "-++++-"),
    ("+---++", "-+-++-"),
    ("+---++", "-++-+-"),
)


def compose_affine(r, beta1: float, beta2: float) -> AffineMap:
    """The n-fold map ``T_r = T_{r_1} o T_{r_2} o ... o T_{r_n}``.

    Slope ``b1^#_n b2^~#_n``, offset ``sum_k r_k b1^#_k b2^~#_k``.
    """
    r = as_signseq(r)
    base_maps(beta1, beta2)
    slope = beta1 ** r.prefix_ones[-1] * beta2 ** r.prefix_minus[-1]
    return AffineMap(slope, affine_offset(r, beta1, beta2))


def affine_offset(r, beta1, beta2):
    """Offset of ``T_r``; vectorised over array-valued contractions."""
    r = as_signseq(r)
    offset = 0.0
    for e, a, b in zip(r.entries, r.prefix_ones, r.prefix_minus):
        offset = offset + e * beta1**a * beta2**b
    return offset


def verify_exact_overlap(pair: SeqPair, point: ParamPoint) -> float:
    """``|offset(T_s) - offset(T_t)|`` at the point.

    Cross-checked against ``|F(beta1, beta2)|``; a disagreement beyond 1e-12
    (relative to the term magnitudes) means the two constructions diverged.
    """
    b1, b2 = point.beta1, point.beta2
    ts = compose_affine(pair.s, b1, b2)
    tt = compose_affine(pair.t, b1, b2)
    diff = ts.offset - tt.offset
    poly = build_curve_poly(pair)
    f = float(evaluate(poly, b1, b2))
    scale = max(1.0, sum(abs(c) * b1**i * b2**j for (i, j), c in poly.terms.items()))
    if abs(diff - f) > 1e-12 * scale:
        raise NumericalFailure(f"overlap residual {diff!r} disagrees with F = {f!r}")
    return abs(diff)


@dataclass(frozen=True)
class ExceptionCertificate:
    pair: SeqPair
    point: ParamPoint
    d: float
    p_M: float
    witness_p: float
    sd: float
    sd_hat: float
    overlap_residual: float
    window: tuple[float, float]
    tool_version: str
    config_digest: str

    def to_json(self) -> dict:
        return {
            "pair": {"s": str(self.pair.s), "t": str(self.pair.t)},
            "beta1": self.point.beta1,
            "beta2": self.point.beta2,
            "point_residual": self.point.residual,
            "in_R": self.point.in_R,
            "d": self.d,
            "p_M": self.p_M,
            "window": {"lo": self.window[0], "hi": self.window[1]},
            "witness_p": self.witness_p,
            "sd": self.sd,
            "sd_hat": self.sd_hat,
            "overlap_residual": self.overlap_residual,
            "tool_version": self.tool_version,
            "config_digest": self.config_digest,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExceptionCertificate":
        pair = validate_pair(data["pair"]["s"], data["pair"]["t"])
        point = ParamPoint(data["beta1"], data["beta2"], data["point_residual"], data["in_R"])
        return cls(
            pair=pair,
            point=point,
            d=data["d"],
            p_M=data["p_M"],
            witness_p=data["witness_p"],
            sd=data["sd"],
            sd_hat=data["sd_hat"],
            overlap_residual=data["overlap_residual"],
            window=(data["window"]["lo"], data["window"]["hi"]),
            tool_version=data["tool_version"],
            config_digest=data["config_digest"],
        )

    def replay(self) -> tuple[float, float]:
        """Recompute (SD, SDhat) at the stored point and weight."""
        b1, b2, p = self.point.beta1, self.point.beta2, self.witness_p
        return similarity_dimension(b1, b2, p), reduced_similarity_dimension(self.pair, b1, b2, p)

    def check(self) -> None:
        """Raise AssertionError unless every certificate invariant holds."""
        assert self.sd >= 1 + MARGIN, self.sd
        assert self.sd_hat <= 1 - MARGIN, self.sd_hat
        assert self.overlap_residual <= ON_CURVE_TOL
        assert self.point.in_R and self.point.residual <= ON_CURVE_TOL


def config_digest(cfg: TraceConfig) -> str:
    payload = dict(asdict(cfg), window_step=WINDOW_STEP, window_tol=WINDOW_TOL, margin=MARGIN)
    text = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def certify_at(pair: SeqPair, point: ParamPoint, cfg: TraceConfig | None = None) -> ExceptionCertificate:
    cfg = cfg or TraceConfig()
    residual = verify_exact_overlap(pair, point)
    profile = exception_window(pair, point, WINDOW_STEP, WINDOW_TOL)
    sd, sd_hat = profile.sd_at_witness, profile.sdhat_at_witness
    if not (sd >= 1 + MARGIN and sd_hat <= 1 - MARGIN):
        raise WindowNotFound(
            f"witness margins below {MARGIN}: SD={sd!r}, SDhat={sd_hat!r}", profile.diagnostics
        )
    return ExceptionCertificate(
        pair=pair,
        point=point,
        d=profile.d,
        p_M=profile.p_M,
        witness_p=profile.witness_p,
        sd=sd,
        sd_hat=sd_hat,
        overlap_residual=residual,
        window=profile.window,
        tool_version=__version__,
        config_digest=config_digest(cfg),
    )


def certify_exception(pair: SeqPair, cfg: TraceConfig | None = None) -> ExceptionCertificate:
    """Certificate at the most interior R-point of the curve.

    When no window is found there, the remaining traced R-points are tried
    in the same order; the first success is returned.
    """
    cfg = cfg or TraceConfig()
    candidates = r_candidates(build_curve_poly(pair), cfg)
    if not candidates:
        raise NoIntersectionWithR(f"no traced point of c_{pair} lies in R")
    first_error = None
    for point in candidates:
        try:
            return certify_at(pair, point, cfg)
        except WindowNotFound as exc:
            first_error = first_error or exc
    raise first_error


@dataclass(frozen=True)
class CatalogRecord:
    pair: SeqPair
    sufficient_condition: bool
    fprime1: int
    intersects_R: bool
    witness_point: ParamPoint | None = None
    certificate: ExceptionCertificate | None = None
    certificate_error: str | None = None

    def __post_init__(self):
        if self.certificate is not None and not self.intersects_R:
            raise ValueError("certificate requires an intersection with R")

    @property
    def n(self) -> int:
        return self.pair.n

    def to_json(self) -> dict:
        w = self.witness_point
        return {
            "n": self.n,
            "s": str(self.pair.s),
            "t": str(self.pair.t),
            "polynomial": build_curve_poly(self.pair).to_text(),
            "sufficient_condition": self.sufficient_condition,
            "fprime1": self.fprime1,
            "intersects_R": self.intersects_R,
            "witness_point": None if w is None else {"beta1": w.beta1, "beta2": w.beta2, "residual": w.residual},
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "certificate_error": self.certificate_error,
        }


def orbit_condition(pair: SeqPair) -> tuple[bool, int]:
    """Sufficient condition over the symmetry orbit of ``pair``.

    Intersection with R is orbit invariant while the condition is not, so a
    class counts as satisfying it when any member does. The reported f'(1)
    comes from the best member meeting the prefix assumptions, or from the
    pair itself when none does.
    """
    best = None
    for member in orbit(pair):
        s, t = member.s.entries, member.t.entries
        if s[:2] == (1, -1) and t[:2] == (-1, 1):
            holds, fp = check_sufficient_condition(member)
            if best is None or fp > best[1]:
                best = (holds, fp)
    if best is None:
        return False, check_sufficient_condition(pair)[1]
    return best


def catalog_record(pair: SeqPair, cfg: TraceConfig | None = None, certify: bool = True) -> CatalogRecord:
    cfg = cfg or TraceConfig()
    holds, fp = orbit_condition(pair)
    point = intersects_R(build_curve_poly(pair), cfg)
    cert = error = None
    if point is not None and certify:
        try:
            cert = certify_exception(pair, cfg)
        except NumericalFailure as exc:
            error = f"{type(exc).__name__}: {exc}"
    return CatalogRecord(pair, holds, fp, point is not None, point, cert, error)


def _record_task(args):
    pair, cfg, certify = args
    return catalog_record(pair, cfg, certify)


@dataclass(frozen=True)
class CatalogSummary:
    n: int
    ordered_pairs: int
    canonical_pairs: int
    degenerate: int
    intersecting: int
    sufficient: int
    certified: int


def build_catalog(
    n_min: int,
    n_max: int,
    cfg: TraceConfig | None = None,
    *,
    certify: bool = True,
    jobs: int = 1,
    max_n: int = DEFAULT_MAX_N,
) -> tuple[list[CatalogRecord], list[CatalogSummary]]:
    """One record per canonical pair for each n in ``[n_min, n_max]``."""
    cfg = cfg or TraceConfig()
    if n_min < 3:
        raise TooShort(f"need n_min >= 3, got {n_min}")
    if n_max > max_n:
        raise LimitExceeded(f"n_max={n_max} exceeds the configured maximum {max_n}")
    if n_min > n_max:
        raise LimitExceeded(f"empty range n_min={n_min} > n_max={n_max}")
    records: list[CatalogRecord] = []
    summaries: list[CatalogSummary] = []
    for n in range(n_min, n_max + 1):
        pairs, stats = enumerate_pairs_with_stats(n, max_n)
        tasks = [(p, cfg, certify) for p in pairs]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                batch = list(pool.map(_record_task, tasks, chunksize=8))
        else:
            batch = [_record_task(t) for t in tasks]
        records.extend(batch)
        summaries.append(
            CatalogSummary(
                n=n,
                ordered_pairs=stats.ordered_pairs,
                canonical_pairs=stats.canonical_pairs,
                degenerate=stats.degenerate,
                intersecting=sum(r.intersects_R for r in batch),
                sufficient=sum(r.sufficient_condition for r in batch),
                certified=sum(r.certificate is not None for r in batch),
            )
        )
    return records, summaries


def known_pair_checks(records: list[CatalogRecord]) -> list[dict]:
    """Whether each known exception pair shows up as an intersecting class."""
    by_pair = {r.pair: r for r in records}
    out = []
    for s, t in KNOWN_EXCEPTION_PAIRS:
        canon = canonical_form(validate_pair(s, t))
        rec = by_pair.get(canon)
        out.append(
            {
                "s": s,
                "t": t,
                "canonical": {"s": str(canon.s), "t": str(canon.t)},
                "in_catalog": rec is not None,
                "intersects_R": None if rec is None else rec.intersects_R,
            }
        )
    return out


def catalog_json(records, summaries, cfg: TraceConfig) -> dict:
    return {
        "tool_version": __version__,
        "config": asdict(cfg),
        "config_digest": config_digest(cfg),
        "summary": [asdict(s) for s in summaries],
        "known_pairs": known_pair_checks(records),
        "records": [r.to_json() for r in records],
    }


__all__ = [
    "KNOWN_EXCEPTION_PAIRS",
    "CatalogRecord",
    "CatalogSummary",
    "ExceptionCertificate",
    "build_catalog",
    "catalog_json",
    "catalog_record",
    "certify_at",
    "certify_exception",
    "affine_offset",
    "compose_affine",
    "config_digest",
    "known_pair_checks",
    "orbit_condition",
    "verify_exact_overlap",
]
