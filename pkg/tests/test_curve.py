import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from clothoidfit import (
    ClothoidSegment,
    DomainError,
    HermiteData,
    SplineError,
    build_clothoid,
    endpoint_residual,
    eval_at,
    fit_spline,
    reduce_angles,
    sample,
)
from clothoidfit.curve import sample_arrays

PI = math.pi
segments = st.builds(
    ClothoidSegment,
    st.floats(-5, 5), st.floats(-5, 5), st.floats(-PI, PI),
    st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 4),
)


def test_eval_at_start():
    seg = ClothoidSegment(1.0, -2.0, 0.4, 0.3, -0.2, 2.0)
    p = eval_at(seg, 0.0)
    assert (p.x, p.y, p.theta, p.kappa, p.extrapolated) == (1.0, -2.0, 0.4, 0.3, False)


def test_eval_at_straight():
    seg = ClothoidSegment(1.0, 2.0, 0.3, 0.0, 0.0, 1.0)
    p = eval_at(seg, 0.7)
    assert p.x == pytest.approx(1 + 0.7 * math.cos(0.3), abs=1e-15)
    assert p.y == pytest.approx(2 + 0.7 * math.sin(0.3), abs=1e-15)


def test_eval_at_circle():
    p = eval_at(ClothoidSegment(0, 0, 0, 1.0, 0.0, PI / 2), PI / 2)
    assert p.x == pytest.approx(1.0, abs=1e-15) and p.y == pytest.approx(1.0, abs=1e-15)
    assert p.theta == pytest.approx(PI / 2) and p.kappa == 1.0


def test_eval_at_extrapolates():
    seg = ClothoidSegment(0, 0, 0, 1.0, 0.0, 1.0)
    assert eval_at(seg, 1.2).extrapolated and eval_at(seg, -0.1).extrapolated
    p = eval_at(seg, 1.2)
    assert p.x == pytest.approx(math.sin(1.2), abs=1e-15)
    with pytest.raises(DomainError):
        eval_at(seg, math.nan)


def test_sample_straight():
    pts = sample(ClothoidSegment(0, 0, 0, 0, 0, 1.0), 3)
    assert [p.s for p in pts] == [0.0, 0.5, 1.0]
    assert [(p.x, p.y) for p in pts] == [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)]


def test_sample_quarter_circle():
    a, b = sample(ClothoidSegment(0, 0, 0, 1.0, 0.0, PI / 2), 2)
    assert (a.x, a.y) == (0.0, 0.0)
    assert b.x == pytest.approx(1.0, abs=1e-12) and b.y == pytest.approx(1.0, abs=1e-12)


def test_sample_requires_two_points():
    with pytest.raises(ValueError):
        sample(ClothoidSegment(0, 0, 0, 0, 0, 1.0), 1)


def _chord_sum(seg, n):
    _, x, y, _, _ = sample_arrays(seg, n)
    return float(np.sum(np.hypot(np.diff(x), np.diff(y))))


def test_polyline_length():
    for d in (HermiteData(0, 0, 0, 1, 1, PI / 2), HermiteData(0, 0, 0, 2, 0.5, -0.4),
              HermiteData(1, 1, 0.2, 3, 2, 0.9)):
        seg, _ = build_clothoid(d)
        assert _chord_sum(seg, 100) == pytest.approx(seg.length, abs=1e-4)


def test_polyline_deficit_matches_curvature_estimate():
    # a chord of length h on an arc of curvature k is short by k^2 h^3 / 24;
    # with kappa up to 8 the deficit at n = 100 exceeds 1e-4
    seg, _ = build_clothoid(HermiteData(0, 0, 0, -0.95, 0.31, 2.0))
    n = 100
    h = seg.length / (n - 1)
    mid = (np.arange(n - 1) + 0.5) * h
    predicted = float(np.sum(seg.kappa_at(mid) ** 2) * h**3 / 24)
    deficit = seg.length - _chord_sum(seg, n)
    assert deficit == pytest.approx(predicted, rel=0.02)


@settings(max_examples=150, deadline=None)
@given(segments)
def test_sample_endpoints(seg):
    pts = sample(seg, 7)
    first, last = eval_at(seg, 0.0), eval_at(seg, seg.length)
    assert abs(pts[0].x - first.x) <= 1e-12 and abs(pts[0].y - first.y) <= 1e-12
    assert abs(pts[-1].x - last.x) <= 1e-12 and abs(pts[-1].y - last.y) <= 1e-12


@settings(max_examples=150, deadline=None)
@given(segments, st.floats(0, 1))
def test_tangent_and_unit_speed(seg, u):
    s = u * seg.length
    h = 1e-5
    a, b = eval_at(seg, s - h), eval_at(seg, s + h)
    dx, dy = (b.x - a.x) / (2 * h), (b.y - a.y) / (2 * h)
    th = seg.theta_at(s)
    assert abs(dx - math.cos(th)) < 1e-6 and abs(dy - math.sin(th)) < 1e-6
    assert abs(math.hypot(dx, dy) - 1) < 1e-6


@settings(max_examples=150, deadline=None)
@given(
    st.floats(0.5, 3), st.floats(-10, 10), st.floats(-3, 3), st.floats(-PI, PI),
    st.floats(-5, 5), st.floats(-5, 5),
)
def test_reconstruction_round_trip(length, a, dtheta, theta0, x0, y0):
    seg = ClothoidSegment(x0, y0, theta0, (dtheta - a) / length, 2 * a / length**2, length)
    x1, y1 = seg.end_point()
    d = HermiteData(x0, y0, theta0, x1, y1, seg.theta1)
    # only the guess-plane branch is recoverable; it covers the angle square
    # except a band next to dphi = +-pi
    assume(abs(reduce_angles(d).dphi) < 2.8)
    fit, _ = build_clothoid(d)
    assert fit.length == pytest.approx(length, rel=1e-7)
    assert fit.kappa == pytest.approx(seg.kappa, rel=1e-7, abs=1e-7 / length)
    assert fit.kappa_prime == pytest.approx(seg.kappa_prime, rel=1e-7, abs=1e-7 / length**2)


# -- splines ------------------------------------------------------------------

def test_spline_two_waypoints():
    spl = fit_spline([(0, 0, 0), (-0.95, 0.31, 2.0)])
    seg, _ = build_clothoid(HermiteData(0, 0, 0, -0.95, 0.31, 2.0))
    assert spl.segments == (seg,)


def test_spline_collinear():
    spl = fit_spline([(0, 0, 0), (1, 0, 0), (3, 0, 0)])
    assert len(spl) == 2
    for seg in spl.segments:
        assert seg.kappa == 0.0 and seg.kappa_prime == 0.0
    assert spl.length == pytest.approx(3.0, abs=1e-15)


def test_spline_square_corner():
    wps = [(0, 0, 0), (1, 0, PI / 2), (1, 1, PI)]
    spl = fit_spline(wps)
    assert len(spl) == 2
    for seg, p, q in zip(spl.segments, wps[:-1], wps[1:]):
        assert endpoint_residual(HermiteData(*p, *q), seg) <= 1e-8


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10), st.floats(-PI, PI)),
                min_size=2, max_size=6))
def test_spline_g1_continuity(wps):
    pts = [p[:2] for p in wps]
    assume(all(math.dist(p, q) > 1e-2 for p, q in zip(pts[:-1], pts[1:])))
    spl = fit_spline(wps)
    for a, b in zip(spl.segments[:-1], spl.segments[1:]):
        end = eval_at(a, a.length)
        assert math.hypot(end.x - b.x0, end.y - b.y0) <= 1e-8 * max(1.0, a.length)
        k = (end.theta - b.theta0) / (2 * PI)
        assert abs(k - round(k)) * 2 * PI <= 1e-8


def test_spline_errors():
    with pytest.raises(ValueError):
        fit_spline([(0, 0, 0)])
    with pytest.raises(SplineError) as info:
        fit_spline([(0, 0, 0), (1, 0, 0), (1, 0, 1)])
    assert info.value.index == 1 and isinstance(info.value.cause, DomainError)
