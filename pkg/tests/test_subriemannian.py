import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heisenberg_solenoid.errors import NoFeasiblePathError
from heisenberg_solenoid.group import HeisenbergPoint, compose
from heisenberg_solenoid.subriemannian import (HorizontalPath, ball_volume_scaling, box_quasinorm,
                                               cc_distance_between, cc_distance_estimate,
                                               cc_distance_search, compose_array, dilate_array,
                                               dilation_jacobian, dilation_scaling_check,
                                               horizontal_frame, inverse_array, path_endpoint,
                                               path_length, planar_lower_bound,
                                               quasinorm_ball_volume, translation_jacobian_check)

from oracles import circle_area_by_quadrature, exact_endpoint

floats = st.floats(-3, 3, allow_nan=False)
ISO = 2 * math.sqrt(math.pi)


def test_array_group_law_matches_exact():
    g, h = (1, 2, 3), (4, 5, 6)
    exact = compose(HeisenbergPoint((1,), (2,), 3), HeisenbergPoint((4,), (5,), 6))
    assert np.array_equal(compose_array(np.array(g, float), np.array(h, float)),
                          np.array(exact.coords(), float))
    z = compose_array(np.array(g, float), inverse_array(np.array(g, float)))
    assert np.allclose(z, 0)


def test_quasinorm_examples():
    assert box_quasinorm([0, 0, 0]) == 0
    assert box_quasinorm([3, 4, 0]) == 7
    assert box_quasinorm([0, 0, 4]) == 2


@given(floats, floats, floats, st.floats(0.1, 5))
def test_quasinorm_is_homogeneous(x, y, t, s):
    assert box_quasinorm(dilate_array(np.array([x, y, t]), s)) == pytest.approx(
        s * box_quasinorm([x, y, t]), rel=1e-9, abs=1e-12)


def test_frame_is_horizontal():
    F = horizontal_frame([1.0, 2.0, 0.5])
    # X = d/dx + y d/dt, Y = d/dy.
    assert np.allclose(F.T, [[1, 0, 2], [0, 1, 0]])


# --- paths --------------------------------------------------------------------

def test_zero_path():
    p = HorizontalPath(np.zeros((8, 2)), start=[1.0, 2.0, 3.0])
    assert path_length(p) == 0
    assert np.array_equal(path_endpoint(p), [1, 2, 3])


def test_straight_segment():
    p = HorizontalPath(np.tile([2.5, 0.0], (16, 1)))
    assert np.allclose(path_endpoint(p), [2.5, 0, 0])
    assert path_length(p) == pytest.approx(2.5)


def test_circle_encloses_its_area():
    m = 256
    tau = np.arange(m) / m
    # Chords of the unit circle, scaled to unit-speed-per-step controls.
    pts = np.stack([np.cos(2 * np.pi * tau), np.sin(2 * np.pi * tau)], axis=1)
    nxt = np.roll(pts, -1, axis=0)
    ctrl = (nxt - pts) * m
    path = HorizontalPath(ctrl, start=[1.0, 0.0, 0.0])
    end = path_endpoint(path)
    assert np.allclose(end[:2], [1, 0], atol=1e-12)
    # Counterclockwise, so t gains the signed integral of y dx = -area.
    assert end[2] == pytest.approx(circle_area_by_quadrature(m), abs=1e-12)
    assert abs(end[2]) == pytest.approx(math.pi, rel=1e-3)


@given(st.integers(1, 6), st.integers(1, 2), st.data())
@settings(max_examples=30)
def test_endpoint_matches_exact_integration(m, n, data):
    ints = st.integers(-6, 6)
    u = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    v = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    start = ([data.draw(ints) for _ in range(n)], [data.draw(ints) for _ in range(n)],
             data.draw(ints))
    x, y, t = exact_endpoint(start, u, v, Fraction(1, m))
    path = HorizontalPath(np.hstack([np.array(u, float), np.array(v, float)]),
                          start=[*start[0], *start[1], start[2]])
    assert np.allclose(path_endpoint(path), [float(c) for c in (*x, *y, t)], atol=1e-9)


# --- distance estimates ------------------------------------------------------

@pytest.mark.parametrize("p,expected,rel", [
    ([1.0, 0.0, 0.0], 1.0, 0.01),
    ([0.0, 1.0, 0.0], 1.0, 0.01),
    ([0.0, 0.0, 1.0], ISO, 0.02),
])
def test_distance_oracles(p, expected, rel):
    assert cc_distance_estimate(p, m=64, restarts=8, seed=0) == pytest.approx(expected, rel=rel)


def test_estimate_at_origin_is_zero():
    assert cc_distance_estimate([0.0, 0.0, 0.0]) == 0


def test_estimate_dominates_planar_bound():
    rng = np.random.default_rng(5)
    for i in range(5):
        p = rng.normal(size=3)
        assert cc_distance_estimate(p, m=32, restarts=4, seed=i) >= planar_lower_bound(p) - 1e-9


def test_search_reports_feasible_path():
    est = cc_distance_search([0.3, -0.5, 0.7], m=32, restarts=4, seed=1)
    assert np.allclose(path_endpoint(est.path), [0.3, -0.5, 0.7], atol=1e-6)
    assert est.length == pytest.approx(path_length(est.path))
    assert len(est.per_restart) == 4


def test_more_restarts_never_hurt():
    p = [0.4, 0.2, -0.9]
    a = cc_distance_estimate(p, m=32, restarts=3, seed=2)
    b = cc_distance_estimate(p, m=32, restarts=6, seed=2)
    assert b <= a


def test_infeasible_search_raises():
    with pytest.raises(NoFeasiblePathError) as err:
        cc_distance_search([0.0, 0.0, 1.0], m=64, restarts=1, seed=0, tol=-1.0)
    assert err.value.best_penalty >= 0


def test_distance_is_right_invariant():
    # The frame d/dx + y d/dt, d/dy is invariant under right translations.
    g, h, a = np.array([0.2, 0.1, 0.3]), np.array([-0.4, 0.5, 0.1]), np.array([1.0, -2.0, 0.5])
    d0 = cc_distance_between(g, h, m=32, restarts=4)
    d1 = cc_distance_between(compose_array(g, a), compose_array(h, a), m=32, restarts=4)
    assert d1 == pytest.approx(d0, rel=1e-6)


def test_dilation_scaling_segment():
    assert dilation_scaling_check([1.0, 0.0, 0.0], 1.0, m=32, restarts=2) == pytest.approx((1, 1), rel=1e-6)
    a, b = dilation_scaling_check([1.0, 0.0, 0.0], 3.0, m=32, restarts=2)
    assert a == pytest.approx(3, rel=0.01) and b == pytest.approx(3, rel=0.01)


def test_dilation_scaling_random_point():
    a, b = dilation_scaling_check([0.3, -0.5, 0.7], 2.0, m=64, restarts=6, seed=3)
    assert a == pytest.approx(b, rel=0.03)


@pytest.mark.slow
def test_comparability_band():
    # d_cc / N on the quasi-sphere N = 1 must stay in a band [c1, c2].
    rng = np.random.default_rng(11)
    ratios = []
    for i in range(100):
        p = rng.normal(size=3)
        p = dilate_array(p, 1.0 / box_quasinorm(p))
        ratios.append(cc_distance_estimate(p, m=32, restarts=4, seed=i))
    c1, c2 = min(ratios), max(ratios)
    assert c1 > 0 and c2 / c1 <= 10


# --- volume and Jacobians ---------------------------------------------------

def test_volume_exponent_small_sample():
    assert ball_volume_scaling(samples=2 * 10 ** 5, seed=4, n=1) == pytest.approx(4, abs=0.15)


def test_volume_rejects_tiny_samples():
    with pytest.raises(ValueError):
        ball_volume_scaling(samples=10)


def test_volume_is_reproducible():
    v1 = quasinorm_ball_volume(1.0, 1, 10 ** 4, np.random.default_rng(7))
    v2 = quasinorm_ball_volume(1.0, 1, 10 ** 4, np.random.default_rng(7))
    assert v1 == v2 > 0


@pytest.mark.parametrize("n", [1, 2])
def test_dilation_jacobian_exact(n):
    assert dilation_jacobian(n, 2.0) == 2 ** (2 * n + 2)
    # Finite-difference check: delta_s is linear.
    d = 2 * n + 1
    J = np.stack([dilate_array(e, 2.0) for e in np.eye(d)])
    assert abs(np.linalg.det(J)) == pytest.approx(2 ** (2 * n + 2))


@pytest.mark.parametrize("side", ["left", "right"])
def test_translation_jacobians(side):
    assert translation_jacobian_check(np.zeros(3), side) < 1e-12
    rng = np.random.default_rng(0)
    for i in range(10):
        h = rng.normal(size=5)
        assert translation_jacobian_check(h, side, probes=3, seed=i) < 1e-6


def test_translation_side_validated():
    with pytest.raises(ValueError):
        translation_jacobian_check(np.zeros(3), "middle")
