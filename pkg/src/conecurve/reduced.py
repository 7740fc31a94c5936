"""Reduced dynamical systems for self-similar cone curves.

A spacelike cone curve is a self-similar curvature-flow solution exactly
when its projections psi = (alpha, tau, eta) = (<X,e>, <T,e>, <Y,e>) onto a
fixed reference vector e solve

    alpha' = tau
    tau'   = (c + a*tau) * alpha - eta
    eta'   = -(c + a*tau) * tau

with the conserved quantity 2*alpha*eta + tau^2 equal to <e,e>.  The
inverse flow replaces the curvature k = c + a*tau by its reciprocal:

    tau'   = alpha / (c + a*tau) - eta
    eta'   = -tau / (c + a*tau)

which is singular across the curvature-zero barrier c + a*tau = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    CurvatureSingularError,
    NoFixedPointsError,
    NotOnConstraintError,
    ZeroStateError,
)
from .minkowski import E1, E2, E3


class VectorClass(Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"

    @property
    def e(self) -> np.ndarray:
        return {"timelike": E1, "lightlike": E2, "spacelike": E3}[self.value].copy()

    @property
    def gamma(self) -> int:
        return {"timelike": -1, "lightlike": 0, "spacelike": 1}[self.value]


class FlowKind(Enum):
    CF = "cf"
    ICF = "icf"


@dataclass(frozen=True)
class FlowParams:
    """Flow data: reference vector v = a*e with a > 0, curvature offset c."""

    a: float
    c: float
    vector_class: VectorClass = VectorClass.TIMELIKE
    flow: FlowKind = FlowKind.CF

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"vector magnitude a must be positive, got {self.a!r}")

    @property
    def gamma(self) -> int:
        return self.vector_class.gamma


class ReducedState(NamedTuple):
    alpha: float
    tau: float
    eta: float

    def array(self) -> np.ndarray:
        return np.array(self, dtype=float)


class ConstraintClass(Enum):
    H = "H"  # timelike reference, 2*alpha*eta + tau^2 = -1, alpha < 0
    C = "C"  # lightlike reference, 2*alpha*eta + tau^2 = 0, psi != 0, alpha <= 0
    S = "S"  # spacelike reference, 2*alpha*eta + tau^2 = 1

    @property
    def gamma(self) -> int:
        return {"H": -1, "C": 0, "S": 1}[self.value]

    @property
    def vector_class(self) -> VectorClass:
        return {
            "H": VectorClass.TIMELIKE,
            "C": VectorClass.LIGHTLIKE,
            "S": VectorClass.SPACELIKE,
        }[self.value]


def constraint_value(psi) -> float:
    """2*alpha*eta + tau^2 (the squared causal character of the reference)."""
    alpha, tau, eta = psi
    return 2.0 * alpha * eta + tau * tau


def classify_initial(psi, tol: float = 1e-9) -> ConstraintClass:
    """Assign a reduced state to H, C or S; reject states on none of them.

    Membership of C at the alpha = 0 boundary additionally requires eta > 0.
    """
    alpha, tau, eta = psi
    if alpha == 0.0 and tau == 0.0 and eta == 0.0:
        raise ZeroStateError("the zero state lies on no constraint set")
    value = constraint_value(psi)
    if abs(value + 1.0) <= tol and alpha < 0:
        return ConstraintClass.H
    if abs(value) <= tol and (alpha < 0 or (alpha <= 0 and eta > 0)):
        return ConstraintClass.C
    if abs(value - 1.0) <= tol:
        return ConstraintClass.S
    raise NotOnConstraintError(
        f"state {tuple(psi)!r} has constraint value {value!r}; "
        "no admissible class within tolerance"
    )


def rhs_cf(psi, params: FlowParams) -> ReducedState:
    """Velocity of the curvature-flow reduced system at psi."""
    alpha, tau, eta = psi
    k = params.c + params.a * tau
    return ReducedState(tau, k * alpha - eta, -k * tau)


def rhs_icf(psi, params: FlowParams, singular_tol: float = 1e-12) -> ReducedState:
    """Velocity of the inverse-flow reduced system at psi.

    Raises CurvatureSingularError when |c + a*tau| <= singular_tol, the
    barrier where the underlying curvature would vanish.
    """
    alpha, tau, eta = psi
    k = params.c + params.a * tau
    if abs(k) <= singular_tol:
        raise CurvatureSingularError(f"c + a*tau = {k!r} at the singular barrier")
    return ReducedState(tau, alpha / k - eta, -tau / k)


def cf_field(params: FlowParams) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator adapter for the curvature-flow system."""
    a, c = params.a, params.c

    def field(s, y):
        tau = y[1]
        k = c + a * tau
        return np.array([tau, k * y[0] - y[2], -k * tau])

    return field


def icf_field(
    params: FlowParams, singular_tol: float = 1e-12
) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator adapter for the inverse-flow system.

    The system lives on one side of the barrier c + a*tau = 0 (the solution
    reaches it with a square-root singularity), so the field raises both when
    |c + a*tau| <= singular_tol and when an evaluation lands across the
    barrier from where the trajectory started; the integrator converts either
    into a SINGULAR_BARRIER stop.
    """
    a, c = params.a, params.c
    side = {"sign": 0.0}

    def field(s, y):
        tau = y[1]
        k = c + a * tau
        if abs(k) <= singular_tol:
            raise CurvatureSingularError(f"c + a*tau = {k!r} at the singular barrier", s=s)
        if side["sign"] == 0.0:
            side["sign"] = 1.0 if k > 0 else -1.0
        elif k * side["sign"] < 0:
            raise CurvatureSingularError(
                f"c + a*tau = {k!r} crossed the singular barrier", s=s
            )
        return np.array([tau, y[0] / k - y[2], -tau / k])

    return field


def conserved_residuals(psi, tau_prime: float, params: FlowParams, cls: ConstraintClass):
    """Residuals of the two first integrals of the curvature-flow system.

    r1 = (c+a*tau)*alpha^2 - alpha*tau' + tau^2/2 - gamma/2
    r2 = eta^2 + eta*tau' + (c+a*tau)*tau^2/2 - gamma*(c+a*tau)/2

    With tau' taken from the right-hand side these reduce to
    (constraint - gamma)/2 and its multiple by c+a*tau, so both vanish on
    the constraint set and stay near zero along integrated trajectories.
    """
    alpha, tau, eta = psi
    k = params.c + params.a * tau
    gamma = cls.gamma
    r1 = k * alpha * alpha - alpha * tau_prime + 0.5 * tau * tau - 0.5 * gamma
    r2 = eta * eta + eta * tau_prime + 0.5 * k * tau * tau - 0.5 * gamma * k
    return r1, r2


@dataclass(frozen=True)
class TrivialSolution:
    """Explicit constant-tau solution and the conic it represents."""

    kind: str  # "constant_curvature_conic" or "parabola_line"
    tau_value: float
    cls: ConstraintClass
    description: str

    def state(self, s: float, psi0: ReducedState) -> ReducedState:
        if self.kind == "constant_curvature_conic":
            return ReducedState(psi0.alpha, 0.0, psi0.eta)
        return ReducedState(self.tau_value * s + psi0.alpha, self.tau_value, 0.0)


def trivial_solution_check(psi0, params: FlowParams, tol: float = 1e-9) -> TrivialSolution | None:
    """Detect the explicit constant-tau solutions.

    tau = 0 with eta = c*alpha gives the stationary conic of constant
    curvature c; tau = +-1 with eta = 0 requires a^2 = c^2 and gives the
    straight parabola family in S.  The state must lie on an admissible
    constraint set; anything else returns None.
    """
    psi0 = ReducedState(*psi0)
    try:
        cls = classify_initial(psi0, tol=tol)
    except (NotOnConstraintError, ZeroStateError):
        return None
    if abs(psi0.tau) <= tol and abs(psi0.eta - params.c * psi0.alpha) <= tol:
        return TrivialSolution(
            "constant_curvature_conic",
            0.0,
            cls,
            f"stationary state ({psi0.alpha!r}, 0, c*alpha); conic of curvature {params.c!r}",
        )
    if abs(abs(psi0.tau) - 1.0) <= tol and abs(psi0.eta) <= tol:
        if abs(params.a * params.a - params.c * params.c) <= tol:
            b = 1.0 if psi0.tau > 0 else -1.0
            return TrivialSolution(
                "parabola_line",
                b,
                cls,
                f"linear solution ({b:+g}*s + alpha0, {b:+g}, 0) in S; parabola of curvature c+a*b",
            )
    return None


# For c = 0 the origin attracts the lightlike-class trajectories but sits on
# the boundary of C (it lies on no constraint set), so it is reported as a
# descriptor rather than through fixed_points.
C_BOUNDARY_ATTRACTOR = ReducedState(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class FixedPointReport:
    points: list[ReducedState]
    eigenvalues: list[tuple[complex, complex]]
    classifications: list[str]
    constraint_class: ConstraintClass


def _eigenpair(alpha: float, a: float, c: float) -> tuple[complex, complex]:
    # nonzero eigenvalues of the Jacobian at a fixed point with first
    # coordinate alpha: roots of lam^2 - a*alpha*lam - 2c = 0
    disc = cmath.sqrt(a * a * alpha * alpha + 8.0 * c)
    lam_plus = (a * alpha + disc) / 2.0
    lam_minus = (a * alpha - disc) / 2.0
    return complex(lam_plus), complex(lam_minus)


def _classify_pair(pair: tuple[complex, complex], degenerate_tol: float = 1e-12) -> str:
    lp, lm = pair
    if abs(lp.real) < degenerate_tol or abs(lm.real) < degenerate_tol:
        return "degenerate"
    if abs(lp.imag) > degenerate_tol:
        return "spiral"
    if lp.real * lm.real < 0:
        return "saddle"
    return "node"


def fixed_points(params: FlowParams, c_tol: float = 1e-14) -> FixedPointReport:
    """Fixed points of the curvature-flow system and their linearizations.

    c < 0: the single attractor p = (-1/q, 0, -c/q) in H with q = sqrt(-2c);
    c > 0: the saddle pair +-p with q = sqrt(2c) in S.  Eigenvalues are the
    two nonzero Jacobian eigenvalues (the third, along the constraint
    direction, is always 0).  c = 0 has no fixed points in H or S; the
    boundary attractor of C at the origin is reported by the caller.
    """
    a, c = params.a, params.c
    if abs(c) <= c_tol:
        raise NoFixedPointsError("c = 0: no fixed points in H or S (origin is a C-boundary attractor)")
    if c < 0:
        q = math.sqrt(-2.0 * c)
        p = ReducedState(-1.0 / q, 0.0, -c / q)
        pair = _eigenpair(p.alpha, a, c)
        return FixedPointReport([p], [pair], [_classify_pair(pair)], ConstraintClass.H)
    q = math.sqrt(2.0 * c)
    p = ReducedState(-1.0 / q, 0.0, -c / q)
    mp = ReducedState(1.0 / q, 0.0, c / q)
    pairs = [_eigenpair(p.alpha, a, c), _eigenpair(mp.alpha, a, c)]
    return FixedPointReport([p, mp], pairs, [_classify_pair(x) for x in pairs], ConstraintClass.S)


def jacobian_cf(psi, params: FlowParams) -> np.ndarray:
    """Jacobian matrix of the curvature-flow right-hand side."""
    alpha, tau, eta = psi
    a, c = params.a, params.c
    k = c + a * tau
    return np.array(
        [
            [0.0, 1.0, 0.0],
            [k, a * alpha, -1.0],
            [0.0, -c - 2.0 * a * tau, 0.0],
        ]
    )


def sample_state(
    cls: ConstraintClass, rng: np.random.Generator, alpha_range=(0.3, 2.5), tau_range=(-1.5, 1.5)
) -> ReducedState:
    """Draw a seeded random state on a constraint set.

    (alpha0, tau0) are sampled and eta0 solved from the constraint,
    eta0 = (gamma - tau0^2) / (2 alpha0); alpha0 is kept away from zero so
    the solve is well posed, and C avoids tau0 = 0 (the stationary parabola
    states).
    """
    lo, hi = alpha_range
    if cls in (ConstraintClass.H, ConstraintClass.C):
        alpha0 = -rng.uniform(lo, hi)
    else:
        alpha0 = rng.uniform(lo, hi) * (1 if rng.uniform() < 0.5 else -1)
    tau0 = rng.uniform(*tau_range)
    while cls is ConstraintClass.C and abs(tau0) < 1e-3:
        tau0 = rng.uniform(*tau_range)
    eta0 = (cls.gamma - tau0 * tau0) / (2.0 * alpha0)
    return ReducedState(alpha0, tau0, eta0)
