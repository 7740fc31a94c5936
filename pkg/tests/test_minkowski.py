"""Metric, causal classification, cross product, frames, curvature."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecurve.errors import NonSpacelikeError
from conecurve.minkowski import (
    AnalyticCurve,
    CausalClass,
    Frame,
    SampledCurve,
    causal_classify,
    curvature_arbitrary,
    curvature_from_derivatives,
    frame_validate,
    lorentz_cross,
    lorentz_inner,
)

finite = st.floats(min_value=-50, max_value=50, allow_nan=False)
vec = st.tuples(finite, finite, finite).map(np.array)


def test_inner_signature_examples():
    assert lorentz_inner((1, 0, 0), (1, 0, 0)) == -1
    assert lorentz_inner((1, 1, 0), (1, 1, 0)) == 0
    assert lorentz_inner((0, 0, 1), (0, 0, 1)) == 1


@given(vec, vec, finite, finite)
@settings(max_examples=60, deadline=None)
def test_inner_symmetric_bilinear(u, v, lam, mu):
    assert lorentz_inner(u, v) == lorentz_inner(v, u)
    w = lam * u + mu * v
    lhs = lorentz_inner(w, w)
    rhs = lam * lam * lorentz_inner(u, u) + 2 * lam * mu * lorentz_inner(u, v) + mu * mu * lorentz_inner(v, v)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)


def test_causal_classification_examples():
    assert causal_classify((2, 0, 0)) is CausalClass.TIMELIKE
    assert causal_classify((3, 3, 0)) is CausalClass.LIGHTLIKE
    assert causal_classify((0, 1, 1)) is CausalClass.SPACELIKE
    assert causal_classify((0, 0, 0)) is CausalClass.ZERO


def test_causal_tolerance_is_scale_aware():
    v = 1e6 * np.array([1.0, 1.0, 0.0])
    v[0] += 1e-9  # tiny absolute perturbation of a huge null vector
    assert causal_classify(v) is CausalClass.LIGHTLIKE


def test_cross_product_examples():
    X = np.array([1.0, 1.0, 0.0])
    Y = np.array([-0.5, 0.5, 0.0])
    assert np.allclose(lorentz_cross(X, Y), [0, 0, 1])
    u = np.array([1.0, 2.0, 3.0])
    assert np.allclose(lorentz_cross(u, u), 0)
    assert np.allclose(lorentz_cross((1, 0, 0), (0, 1, 0)), [0, 0, 1])


@given(vec, vec)
@settings(max_examples=60, deadline=None)
def test_cross_orthogonal_to_factors(u, v):
    w = lorentz_cross(u, v)
    scale = 1.0 + float(np.abs(u).max() * np.abs(v).max())
    assert abs(lorentz_inner(w, u)) <= 1e-10 * scale * (1 + np.abs(u).max())
    assert abs(lorentz_inner(w, v)) <= 1e-10 * scale * (1 + np.abs(v).max())


@given(vec, vec, vec)
@settings(max_examples=60, deadline=None)
def test_cross_determinant_identity(u, v, z):
    det = float(np.linalg.det(np.array([u, v, z])))
    scale = 1.0 + abs(det) + float(np.abs(u).max() * np.abs(v).max() * np.abs(z).max())
    assert lorentz_inner(lorentz_cross(u, v), z) == pytest.approx(det, abs=1e-8 * scale)


CANONICAL = Frame(
    X=np.array([1.0, 1.0, 0.0]),
    T=np.array([0.0, 0.0, 1.0]),
    Y=np.array([-0.5, 0.5, 0.0]),
)


def test_frame_validate_canonical():
    check = frame_validate(CANONICAL, tol=1e-12)
    assert check.passed
    assert check.max_residual == 0


def test_frame_validate_detects_bad_pairing():
    bad = Frame(X=2 * CANONICAL.X, T=CANONICAL.T, Y=CANONICAL.Y)
    check = frame_validate(bad)
    assert not check.passed
    assert check.residuals["xy"] == pytest.approx(1.0)


def test_frame_cross_identity():
    assert np.allclose(lorentz_cross(CANONICAL.X, CANONICAL.Y), CANONICAL.T)


def _circle(rho0):
    x = lambda u: np.array([rho0, rho0 * math.cos(u), rho0 * math.sin(u)])
    xp = lambda u: np.array([0.0, -rho0 * math.sin(u), rho0 * math.cos(u)])
    xpp = lambda u: np.array([0.0, -rho0 * math.cos(u), -rho0 * math.sin(u)])
    return x, xp, xpp


def test_curvature_circle_analytic():
    _, xp, xpp = _circle(1.0)
    curve = AnalyticCurve(xp, xpp)
    assert curvature_arbitrary(curve, 0.7) == pytest.approx(-0.5, abs=1e-14)
    # radius rho scales curvature as -1/(2 rho^2)
    _, xp2, xpp2 = _circle(2.0)
    assert curvature_arbitrary(AnalyticCurve(xp2, xpp2), 0.1) == pytest.approx(-1 / 8, abs=1e-14)


def test_curvature_parabola_is_zero():
    # null-plane section x1 - x2 = 1, an arc-length parabola on the cone
    xp = lambda s: np.array([s, s, 1.0])
    xpp = lambda s: np.array([1.0, 1.0, 0.0])
    assert curvature_arbitrary(AnalyticCurve(xp, xpp), 0.3) == pytest.approx(0.0, abs=1e-15)


def test_curvature_hyperbola_plane_section():
    # intersection with x3*sqrt(2c) = 1 for c = 1/2: constant curvature 1/2
    h = 1.0
    xp = lambda u: np.array([math.sinh(u), math.cosh(u), 0.0])
    xpp = lambda u: np.array([math.cosh(u), math.sinh(u), 0.0])
    curve = AnalyticCurve(xp, xpp)
    ks = [curvature_arbitrary(curve, u) for u in np.linspace(-1, 1, 7)]
    assert np.allclose(ks, 0.5, atol=1e-12)
    assert all(k > 0 for k in ks)


def test_curvature_sampled_circle():
    x, _, _ = _circle(1.0)
    us = np.linspace(0, 2 * math.pi, 1500)
    curve = SampledCurve(us, np.array([x(u) for u in us]))
    mid = us[len(us) // 2]
    assert curvature_arbitrary(curve, mid) == pytest.approx(-0.5, abs=1e-9)


def test_curvature_reparametrization_invariance():
    x, _, _ = _circle(1.0)
    n = 1600
    us = np.linspace(0.5, 2.5, n)
    slow = SampledCurve(us, np.array([x(u) for u in us]))
    fast = SampledCurve(us / 2, np.array([x(u) for u in us]))  # same points, u -> u/2 grid
    k1 = curvature_arbitrary(slow, us[n // 3])
    k2 = curvature_arbitrary(fast, us[n // 3] / 2)
    assert k1 == pytest.approx(k2, abs=1e-8)
    assert k1 == pytest.approx(-0.5, abs=1e-9)


def test_arclength_frame_relation():
    # for arc-length cone curves <T',T'> = -2k
    _, xp, xpp = _circle(1.0)
    tp = xpp(0.4)
    assert lorentz_inner(tp, tp) == pytest.approx(-2 * (-0.5), abs=1e-14)


def test_non_spacelike_rejected():
    xp = lambda u: np.array([1.0, 1.0, 0.0])  # lightlike tangent
    xpp = lambda u: np.zeros(3)
    with pytest.raises(NonSpacelikeError):
        curvature_arbitrary(AnalyticCurve(xp, xpp), 0.0)


def test_sampled_curve_requires_uniform_grid():
    us = np.array([0.0, 0.1, 0.25, 0.3, 0.4])
    with pytest.raises(ValueError):
        SampledCurve(us, np.zeros((5, 3)))
