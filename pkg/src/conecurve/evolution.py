"""Time evolutions of cone curves under the flow and its inverse.

Constant-curvature curves evolve by pure scaling: X_t = f(t) X with
f = sqrt(2kt+1) under the curvature flow and f = 1/sqrt(2t/k+1) under the
inverse flow.  A curve with k(s) = c + a<T(s),e> evolves self-similarly by
X_t = f(t) M(t) X where M(t) is the one-parameter isometry group fixing e
(rotation, null rotation or boost) run at angle phi(t) = (a/c) log f(t)
(phi = a t when c = 0).  Under any such evolution T_t = M T,
Y_t = (1/f) M Y and k_t = k / f^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cone import ConicSpec, CurveSample, conic_generator
from .errors import CurvatureZeroError, OutOfDomainError
from .minkowski import METRIC, SampledCurve, curvature_arbitrary, lorentz_inner
from .reduced import FlowKind, FlowParams, VectorClass

_DOMAIN_GUARD = 1e-10  # smallest admissible 2ct+1 for c != 0 families


@dataclass(frozen=True)
class HomothetyFlow:
    """Pure-scaling evolution of a constant-curvature curve."""

    k: float
    flow: FlowKind
    t_lo: float
    t_hi: float

    def contains(self, t: float) -> bool:
        return self.t_lo < t < self.t_hi

    def f(self, t: float) -> float:
        if not self.contains(t):
            raise OutOfDomainError(f"t={t!r} outside J=({self.t_lo!r}, {self.t_hi!r})")
        if self.flow is FlowKind.CF:
            return math.sqrt(2.0 * self.k * t + 1.0)
        return 1.0 / math.sqrt(2.0 * t / self.k + 1.0)

    def k_hat(self, t: float) -> float:
        if not self.contains(t):
            raise OutOfDomainError(f"t={t!r} outside J=({self.t_lo!r}, {self.t_hi!r})")
        if self.flow is FlowKind.CF:
            return self.k / (2.0 * self.k * t + 1.0)
        return 2.0 * t + self.k


def homothety_flow(k: float, flow: FlowKind) -> HomothetyFlow:
    """Scaling law and maximal time interval for constant curvature k != 0."""
    if k == 0:
        raise OutOfDomainError("homothety evolution needs k != 0 (a parabola is stationary)")
    if flow is FlowKind.CF:
        edge = -1.0 / (2.0 * k)
    else:
        edge = -k / 2.0
    if k < 0:
        return HomothetyFlow(k, flow, -math.inf, edge)
    return HomothetyFlow(k, flow, edge, math.inf)


def homothety_evolve(
    spec: ConicSpec, flow: FlowKind, t: float
) -> tuple[list[CurveSample], float]:
    """Conic curve scaled to time t, with its evolved curvature."""
    hf = homothety_flow(spec.k, flow)
    f = hf.f(t)
    k_hat = hf.k_hat(t)
    samples = conic_generator(spec)
    scaled = [
        CurveSample(sm.s, f * sm.X, sm.T.copy(), sm.Y / f, sm.k / (f * f)) for sm in samples
    ]
    return scaled, k_hat


@dataclass(frozen=True)
class IsometryFamily:
    """One-parameter isometry group fixing the reference vector, with its clock.

    matrix(t) is a rotation in (x2,x3) for a timelike reference, the null
    rotation fixing (1,1,0) for a lightlike one, and a boost in (x1,x2) for
    a spacelike one; every matrix satisfies M^T L M = L with L the metric.
    """

    vector_class: VectorClass
    a: float
    c: float

    def f(self, t: float) -> float:
        if self.c == 0:
            return 1.0
        u = 2.0 * self.c * t + 1.0
        if u < _DOMAIN_GUARD:
            raise OutOfDomainError(f"2ct+1 = {u!r} below the domain guard at t={t!r}")
        return math.sqrt(u)

    def phi(self, t: float) -> float:
        if self.c == 0:
            return self.a * t
        return (self.a / self.c) * math.log(self.f(t))

    def matrix(self, t: float) -> np.ndarray:
        p = self.phi(t)
        if self.vector_class is VectorClass.TIMELIKE:
            cp, sp = math.cos(p), math.sin(p)
            return np.array([[1.0, 0.0, 0.0], [0.0, cp, -sp], [0.0, sp, cp]])
        if self.vector_class is VectorClass.LIGHTLIKE:
            q = 0.5 * p * p
            return np.array([[1.0 + q, -q, -p], [q, 1.0 - q, -p], [-p, p, 1.0]])
        ch, sh = math.cosh(p), math.sinh(p)
        return np.array([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])


def isometry_family(params: FlowParams) -> IsometryFamily:
    return IsometryFamily(params.vector_class, params.a, params.c)


def evolve_self_similar(
    samples: Sequence[CurveSample], fam: IsometryFamily, t: float
) -> list[CurveSample]:
    """Apply X -> f M X, T -> M T, Y -> (1/f) M Y, k -> k/f^2 at time t."""
    f = fam.f(t)
    M = fam.matrix(t)
    return [
        CurveSample(sm.s, f * (M @ sm.X), M @ sm.T, (M @ sm.Y) / f, sm.k / (f * f))
        for sm in samples
    ]


def verify_flow_equation(
    evolution: Callable[[float], Sequence[CurveSample]],
    t: float,
    dt: float = 1e-4,
    flow: FlowKind = FlowKind.CF,
    richardson: bool = False,
) -> float:
    """Finite-difference check of <d/dt X_t, Y_t> = k_t (or -1/k_t).

    Central differences at fixed s; the residual is O(dt^2) for exact
    evolutions.  With richardson=True a second pass at dt/2 extrapolates the
    dominant error term away.
    """

    def residual(step: float) -> float:
        now = evolution(t)
        plus = evolution(t + step)
        minus = evolution(t - step)
        worst = 0.0
        for sm0, smp, smm in zip(now, plus, minus):
            xdot = (smp.X - smm.X) / (2.0 * step)
            lhs = lorentz_inner(xdot, sm0.Y)
            target = sm0.k if flow is FlowKind.CF else -1.0 / sm0.k
            worst = max(worst, abs(lhs - target))
        return worst

    r1 = residual(dt)
    if not richardson:
        return r1
    r2 = residual(dt / 2.0)
    return abs((4.0 * r2 - r1) / 3.0)


def cf_icf_duality(samples: Sequence[CurveSample], k_tol: float = 1e-8) -> list[CurveSample]:
    """Dual curve -Y of a curvature-flow component, with its own frame.

    On a component where k never vanishes, -Y is an inverse-flow solution
    with curvature 1/k.  Its arc length obeys ds~ = |k| ds and the dual frame
    is (X~, T~, Y~) = (-Y, sign(k) T, -X), which satisfies the frame
    relations exactly.  Raises CurvatureZeroError if |k| <= k_tol anywhere.
    """
    if any(abs(sm.k) <= k_tol for sm in samples):
        raise CurvatureZeroError("component contains a curvature zero; split it first")
    sign = 1.0 if samples[0].k > 0 else -1.0
    out: list[CurveSample] = []
    s_dual = 0.0
    prev = None
    for sm in samples:
        if prev is not None:
            s_dual += 0.5 * (abs(prev.k) + abs(sm.k)) * (sm.s - prev.s)
        out.append(CurveSample(s_dual, -sm.Y, sign * sm.T, -sm.X, 1.0 / sm.k))
        prev = sm
    return out


def dual_curvature_check(samples: Sequence[CurveSample], stride: int = 8) -> float:
    """Max |curvature(-Y) - 1/k| measured from sampled points alone.

    Resamples the dual points on a uniform grid of the original parameter and
    differentiates numerically, so the check is independent of the dual frame
    construction.
    """
    ss = np.array([sm.s for sm in samples])
    pts = np.array([-sm.Y for sm in samples])
    curve = SampledCurve(ss, pts)
    worst = 0.0
    for i in range(2, len(ss) - 2, stride):
        k_dual = curvature_arbitrary(curve, ss[i])
        worst = max(worst, abs(k_dual - 1.0 / samples[i].k))
    return worst


def lorentz_arc_length(samples: Sequence[CurveSample]) -> float:
    """Arc length sum of sqrt(<dX,dX>) over consecutive samples."""
    total = 0.0
    for a, b in zip(samples[:-1], samples[1:]):
        d = b.X - a.X
        q = lorentz_inner(d, d)
        total += math.sqrt(max(q, 0.0))
    return total
