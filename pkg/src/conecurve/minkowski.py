"""Minkowski 3-space primitives.

The ambient space is R^3 with the indefinite inner product
``<u, v> = -u1*v1 + u2*v2 + u3*v3``.  Spacelike curves on the positive
light-cone sheet ``Q+ = {p != 0 : <p,p> = 0, p1 > 0}`` carry a frame
``{X, T, Y}``: the curve point, the unit tangent and the unique lightlike
partner with ``<X,Y> = 1`` and ``<T,Y> = 0``.  The cone curvature k is
defined through ``T' = k X - Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NonSpacelikeError

E1 = np.array([1.0, 0.0, 0.0])  # timelike reference vector
E2 = np.array([1.0, 1.0, 0.0])  # lightlike reference vector
E3 = np.array([0.0, 0.0, 1.0])  # spacelike reference vector

METRIC = np.diag([-1.0, 1.0, 1.0])

CAUSAL_TOL = 1e-12


def lorentz_inner(u, v) -> float:
    """Indefinite inner product -u1*v1 + u2*v2 + u3*v3."""
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2])


def lorentz_norm2(v) -> float:
    """<v, v>; negative for timelike, zero for lightlike, positive for spacelike."""
    return lorentz_inner(v, v)


class CausalClass(Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"
    ZERO = "zero"


def causal_classify(v, tol: float = CAUSAL_TOL) -> CausalClass:
    """Classify a vector by the sign of <v, v>.

    The zero test is scale aware: |<v,v>| <= tol * (|v|_e^2 + 1) counts as
    lightlike, where |v|_e is the Euclidean norm.  The exact zero vector is
    classified separately.
    """
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        return CausalClass.ZERO
    q = lorentz_norm2(v)
    scale = float(v @ v) + 1.0
    if abs(q) <= tol * scale:
        return CausalClass.LIGHTLIKE
    return CausalClass.TIMELIKE if q < 0 else CausalClass.SPACELIKE


def lorentz_cross(u, v) -> np.ndarray:
    """Cross product adapted to the metric: <u x v, z> = det[u; v; z] for all z.

    Equivalently the Euclidean cross product with the first component's sign
    flipped.  Satisfies X x Y = T on any valid frame.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    w = np.cross(u, v)
    w[0] = -w[0]
    return w


@dataclass(frozen=True)
class Frame:
    """Curve trihedron {X, T, Y} at parameter s."""

    X: np.ndarray
    T: np.ndarray
    Y: np.ndarray
    s: float = 0.0


@dataclass(frozen=True)
class FrameCheck:
    """Inner-product residuals of the frame relations and a pass flag."""

    residuals: dict[str, float]
    max_residual: float
    on_positive_sheet: bool
    passed: bool


def frame_validate(frame: Frame, tol: float = 1e-10) -> FrameCheck:
    """Measure how far a frame is from satisfying its six defining relations.

    Residuals are <X,X>, <Y,Y>, <T,T>-1, <X,T>, <Y,T>, <X,Y>-1; the check
    passes when all are within tol and X lies on the x1 > 0 sheet.
    """
    X, T, Y = frame.X, frame.T, frame.Y
    residuals = {
        "xx": lorentz_inner(X, X),
        "yy": lorentz_inner(Y, Y),
        "tt": lorentz_inner(T, T) - 1.0,
        "xt": lorentz_inner(X, T),
        "yt": lorentz_inner(Y, T),
        "xy": lorentz_inner(X, Y) - 1.0,
    }
    max_residual = max(abs(r) for r in residuals.values())
    on_sheet = bool(X[0] > 0)
    return FrameCheck(residuals, max_residual, on_sheet, max_residual <= tol and on_sheet)


def curvature_from_derivatives(xp, xpp, tol: float = 1e-12) -> float:
    """Cone curvature of an arbitrarily parametrized spacelike curve.

    k = (<X',X''>^2 - <X',X'><X'',X''>) / (2 <X',X'>^3).  Requires a
    spacelike tangent, <X',X'> > tol.
    """
    g11 = lorentz_inner(xp, xp)
    if g11 <= tol:
        raise NonSpacelikeError(f"tangent is not spacelike: <X',X'> = {g11!r}")
    g12 = lorentz_inner(xp, xpp)
    g22 = lorentz_inner(xpp, xpp)
    return (g12 * g12 - g11 * g22) / (2.0 * g11**3)


def curvature_arbitrary(curve, u: float, tol: float = 1e-12) -> float:
    """Curvature at parameter u of any curve exposing ``derivatives(u)``.

    The curve object must return the pair (X'(u), X''(u)).
    """
    xp, xpp = curve.derivatives(u)
    return curvature_from_derivatives(xp, xpp, tol=tol)


class SampledCurve:
    """Curve given by points on a uniform parameter grid.

    Derivatives use 4th-order central differences in the interior and
    2nd-order one-sided stencils at the ends, evaluated at grid nodes.
    """

    def __init__(self, us, points):
        us = np.asarray(us, dtype=float)
        points = np.asarray(points, dtype=float)
        if us.ndim != 1 or len(us) < 5:
            raise ValueError("need at least 5 samples on a 1-d grid")
        if points.shape != (len(us), 3):
            raise ValueError("points must have shape (len(us), 3)")
        steps = np.diff(us)
        h = steps[0]
        if not np.allclose(steps, h, rtol=1e-9, atol=1e-12):
            raise ValueError("parameter grid must be uniform")
        self.us = us
        self.points = points
        self.h = float(h)

    def _index(self, u: float) -> int:
        i = int(round((u - self.us[0]) / self.h))
        if i < 0 or i >= len(self.us) or abs(self.us[i] - u) > 0.5 * abs(self.h):
            raise ValueError(f"u={u!r} is not a grid node")
        return i

    def derivatives(self, u: float):
        i = self._index(u)
        p, h = self.points, self.h
        n = len(self.us)
        if 2 <= i <= n - 3:
            xp = (-p[i + 2] + 8 * p[i + 1] - 8 * p[i - 1] + p[i - 2]) / (12 * h)
            xpp = (-p[i + 2] + 16 * p[i + 1] - 30 * p[i] + 16 * p[i - 1] - p[i - 2]) / (12 * h * h)
        elif i in (1, n - 2):
            xp = (p[i + 1] - p[i - 1]) / (2 * h)
            xpp = (p[i + 1] - 2 * p[i] + p[i - 1]) / (h * h)
        elif i == 0:
            xp = (-3 * p[0] + 4 * p[1] - p[2]) / (2 * h)
            xpp = (2 * p[0] - 5 * p[1] + 4 * p[2] - p[3]) / (h * h)
        else:
            xp = (3 * p[-1] - 4 * p[-2] + p[-3]) / (2 * h)
            xpp = (2 * p[-1] - 5 * p[-2] + 4 * p[-3] - p[-4]) / (h * h)
        return xp, xpp


class AnalyticCurve:
    """Curve with caller-supplied first and second derivative callables."""

    def __init__(self, xp, xpp):
        self._xp = xp
        self._xpp = xpp

    def derivatives(self, u: float):
        return np.asarray(self._xp(u), dtype=float), np.asarray(self._xpp(u), dtype=float)
