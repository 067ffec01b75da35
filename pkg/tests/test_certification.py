import json

import numpy as np
import pytest

from exception_curves import export, validate_pair
from exception_curves.certification import (
    KNOWN_EXCEPTION_PAIRS,
    ExceptionCertificate,
    build_catalog,
    catalog_json,
    catalog_record,
    certify_exception,
    compose_affine,
    orbit_condition,
    verify_exact_overlap,
)
from exception_curves.combinatorics import canonical_form, enumerate_pairs, swap
from exception_curves.curve_analysis import ParamPoint, TraceConfig, trace_curve
from exception_curves.errors import LimitExceeded, NoIntersectionWithR, OutOfDomain, TooShort
from exception_curves.polynomial import build_curve_poly, evaluate

from .cases import PUBLISHED_N5, PUBLISHED_N6, canonical_pairs


def chain(r, b1, b2):
    """Oracle: compose T_{r_1} o ... o T_{r_n} as explicit functions."""
    maps = {1: lambda x: b1 * x + b1, -1: lambda x: b2 * x - b2}

    def f(x):
        for e in reversed(r):
            x = maps[e](x)
        return x

    return f


def test_compose_single_map():
    t = compose_affine((1,), 0.6, 0.7)
    assert (t.slope, t.offset) == (0.6, 0.6)


def test_compose_two_maps():
    t = compose_affine((1, -1), 0.6, 0.7)
    assert t.slope == pytest.approx(0.42, abs=1e-15)
    assert t.offset == pytest.approx(0.18, abs=1e-15)
    x = 0.37
    assert t(x) == pytest.approx(0.6 * (0.7 * x - 0.7) + 0.6, abs=1e-15)


def test_compose_matches_function_chain():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        r = tuple(int(v) for v in rng.choice([-1, 1], size=n))
        b1, b2 = rng.uniform(0.05, 0.95, size=2)
        t = compose_affine(r, b1, b2)
        f = chain(r, b1, b2)
        for x in (-1.0, 0.0, 0.5, 2.0):
            assert t(x) == pytest.approx(f(x), abs=1e-13)


def test_compose_domain():
    with pytest.raises(OutOfDomain):
        compose_affine((1, -1), 1.0, 0.5)


def test_equal_slopes_for_pairs():
    for pair in canonical_pairs(6):
        assert compose_affine(pair.s, 0.63, 0.81).slope == compose_affine(pair.t, 0.63, 0.81).slope


def test_overlap_residual(n5_pair):
    poly = build_curve_poly(n5_pair)
    on = [p for p in trace_curve(poly) if p.in_R][:25]
    for p in on:
        assert verify_exact_overlap(n5_pair, p) <= 1e-9
        assert verify_exact_overlap(swap(n5_pair), p) == pytest.approx(
            verify_exact_overlap(n5_pair, p), abs=1e-15
        )
    off = ParamPoint.on(poly, 0.9, 0.9)
    x = y = 0.9
    direct = 2*x**2*y**3 + x**2*y**2 - x**2*y - x*y**3 - x*y**2 - 2*x*y + x + y
    assert verify_exact_overlap(n5_pair, off) == pytest.approx(abs(direct), abs=1e-14)
    assert verify_exact_overlap(n5_pair, off) > 0


def test_overlap_equals_curve_polynomial():
    rng = np.random.default_rng(9)
    pairs = canonical_pairs(6)
    for _ in range(1000):
        pair = pairs[rng.integers(len(pairs))]
        b1, b2 = rng.uniform(0.01, 0.99, size=2)
        diff = compose_affine(pair.s, b1, b2).offset - compose_affine(pair.t, b1, b2).offset
        f = float(evaluate(build_curve_poly(pair), b1, b2))
        assert abs(diff - f) <= 1e-12 * max(1.0, abs(f))


def test_certify_n5_pair(n5_pair):
    cert = certify_exception(n5_pair)
    cert.check()
    assert cert.sd_hat < cert.sd
    assert cert.point.beta1 + cert.point.beta2 > 1
    sd, sd_hat = cert.replay()
    assert abs(sd - cert.sd) <= 1e-10 and abs(sd_hat - cert.sd_hat) <= 1e-10
    assert cert == certify_exception(n5_pair)


@pytest.mark.parametrize("pair", PUBLISHED_N6)
def test_certify_n6(pair):
    certify_exception(validate_pair(*pair)).check()


@pytest.mark.parametrize("pair", enumerate_pairs(3))
def test_certify_n3_fails(pair):
    with pytest.raises(NoIntersectionWithR):
        certify_exception(pair)


def test_certificate_json_roundtrip(n5_pair):
    cert = certify_exception(n5_pair)
    text = export.dumps(cert.to_json())
    back = ExceptionCertificate.from_json(json.loads(text))
    assert back == cert
    sd, sd_hat = back.replay()
    assert abs(sd - cert.sd) <= 1e-10 and abs(sd_hat - cert.sd_hat) <= 1e-10


def test_config_digest_tracks_config(n5_pair):
    a = certify_exception(n5_pair)
    b = certify_exception(n5_pair, TraceConfig(y_step=2e-3))
    assert a.config_digest != b.config_digest


def test_orbit_condition(n5_pair):
    canon = canonical_form(n5_pair)
    assert canon.s.entries[0] == -1
    assert orbit_condition(canon) == (True, 1)
    rec = catalog_record(canon)
    assert rec.sufficient_condition and rec.intersects_R and rec.certificate is not None


def test_catalog_small():
    records, summaries = build_catalog(3, 5)
    assert [s.canonical_pairs for s in summaries] == [3, 15, 55]
    assert [s.intersecting for s in summaries] == [0, 0, 1]
    hit = [r for r in records if r.intersects_R]
    assert [r.pair for r in hit] == [canonical_form(validate_pair(*PUBLISHED_N5))]
    keys = [(r.n, r.pair.key()) for r in records]
    assert keys == sorted(keys)


def test_catalog_limits():
    with pytest.raises(TooShort):
        build_catalog(2, 4)
    with pytest.raises(LimitExceeded):
        build_catalog(3, 13)


def test_catalog_json_deterministic():
    cfg = TraceConfig()
    a = export.dumps(catalog_json(*build_catalog(3, 5, cfg), cfg))
    b = export.dumps(catalog_json(*build_catalog(3, 5, cfg), cfg))
    assert a == b
    data = json.loads(a)
    assert data["summary"][2]["intersecting"] == 1
    assert data["known_pairs"][0]["intersects_R"] is True


@pytest.mark.slow
def test_catalog_n6_contains_printed_pairs():
    records, summaries = build_catalog(6, 6, jobs=2)
    hits = {r.pair for r in records if r.intersects_R}
    for s, t in KNOWN_EXCEPTION_PAIRS[1:]:
        assert canonical_form(validate_pair(s, t)) in hits
    assert all(r.certificate is not None for r in records if r.intersects_R)
    for r in records:
        if r.certificate is not None:
            r.certificate.check()
    serial, _ = build_catalog(6, 6)
    assert [r.to_json() for r in serial] == [r.to_json() for r in records]
