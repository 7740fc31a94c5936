"""Closed-form lightlike-reference soliton of the inverse flow.

With c = 0 and reference vector (1,1,0), the inverse-flow reduced system
integrates in closed form.  Writing r(s) = eta(s) = -s/a + eta0 > 0:

    tau(r)   = 2 a r^2 / 3 + sqrt(r) * C1,     C1 = (3 tau0 - 2 a eta0^2) / (3 sqrt(eta0))
    alpha(s) = -tau(s)^2 / (2 eta(s))
    x3(r)    = (r^(3/2) + D)^2 * (a * F(r) + C),   D = 3 C1 / (2 a)

where F is an antiderivative of (r^(3/2) + D)^(-2): closed form for D > 0,
the monomial -1/(2 r^2) for D = 0, adaptive quadrature for D < 0.  The
curve and its lightlike partner are recovered componentwise from the cone
conditions; -Y is a soliton of the direct curvature flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.integrate import quad

from .errors import DegenerateAlphaError, OutOfDomainError, PoleAtRootError
from .reduced import ReducedState

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class LightlikeSolitonParams:
    """Soliton data: reference magnitude a > 0, initial eta0 > 0, tau0, and
    the free integration constant C of the x3 antiderivative."""

    a: float
    eta0: float
    tau0: float
    C: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"a must be positive, got {self.a!r}")
        if not self.eta0 > 0:
            raise ValueError(f"eta0 must be positive, got {self.eta0!r}")

    @cached_property
    def c1(self) -> float:
        return (3.0 * self.tau0 - 2.0 * self.a * self.eta0**2) / (3.0 * math.sqrt(self.eta0))

    @cached_property
    def D(self) -> float:
        return 3.0 * self.c1 / (2.0 * self.a)

    @property
    def s_max(self) -> float:
        """Domain boundary: states exist for s < a * eta0."""
        return self.a * self.eta0

    def split_points(self) -> list[float]:
        """Parameter values where tau vanishes (alpha degenerates).

        tau(r) = 0 at r = (-D)^(2/3), which exists only for D < 0; the same
        r is the pole of the x3 integrand.
        """
        if self.D >= 0:
            return []
        r_star = (-self.D) ** (2.0 / 3.0)
        return [self.a * (self.eta0 - r_star)]


def eta_tilde(s: float, p: LightlikeSolitonParams) -> float:
    """eta(s) = -s/a + eta0, valid for s < a*eta0."""
    if s >= p.s_max:
        raise OutOfDomainError(f"s={s!r} outside the soliton domain s < {p.s_max!r}")
    return -s / p.a + p.eta0


def tau_tilde(r: float, p: LightlikeSolitonParams) -> float:
    """tau as a function of r = eta: 2 a r^2 / 3 + sqrt(r) C1."""
    if r <= 0:
        raise OutOfDomainError(f"r={r!r} must be positive")
    return 2.0 * p.a * r * r / 3.0 + math.sqrt(r) * p.c1


def _antiderivative_positive_d(r: float, D: float) -> float:
    """Closed-form antiderivative of (r^(3/2)+D)^(-2) for D > 0.

    Exact on r > 0 with principal log/arctan branches (the log argument is
    positive and the arctan argument continuous there, so no branch
    correction is needed; the derivative check in the tests pins this).
    """
    d13 = D ** (1.0 / 3.0)
    d43 = D ** (4.0 / 3.0)
    sq = math.sqrt(r)
    log_term = math.log((r - d13 * (sq - d13)) / (sq + d13) ** 2) / (9.0 * d43)
    atan_term = (2.0 / (3.0 * math.sqrt(3.0) * d43)) * (
        math.atan((2.0 * sq - d13) / (math.sqrt(3.0) * d13))
        + math.sqrt(3.0) * r / (r * sq / d13 + D ** (2.0 / 3.0))
    )
    return log_term + atan_term


def x3_antiderivative(r: float, D: float) -> float:
    """An antiderivative F(r) of (r^(3/2) + D)^(-2) on r > 0.

    For D < 0 the integrand has a pole at r* = (-D)^(2/3); F is computed by
    adaptive quadrature from a reference point on the same side of the pole,
    so values on opposite sides carry independent integration constants.
    """
    if r <= 0:
        raise OutOfDomainError(f"r={r!r} must be positive")
    u = r ** 1.5 + D
    if abs(u) <= _POLE_TOL * (1.0 + abs(D)):
        raise PoleAtRootError(f"r={r!r} is at the pole of (r^(3/2)+D)^(-2)")
    if D > 0:
        return _antiderivative_positive_d(r, D)
    if D == 0:
        return -0.5 / (r * r)
    r_star = (-D) ** (2.0 / 3.0)
    ref = 0.5 * r_star if r < r_star else 2.0 * r_star
    value, _ = quad(lambda v: (v**1.5 + D) ** -2, ref, r, epsabs=1e-14, epsrel=1e-13, limit=200)
    return value


def x3_tilde(r: float, p: LightlikeSolitonParams) -> float:
    """Third curve component as a function of r = eta."""
    u = r ** 1.5 + p.D
    if abs(u) <= _POLE_TOL * (1.0 + abs(p.D)):
        raise PoleAtRootError(f"r={r!r} is at the pole of the x3 integrand")
    return u * u * (p.a * x3_antiderivative(r, p.D) + p.C)


def reduced_of(s: float, p: LightlikeSolitonParams) -> ReducedState:
    """Closed-form reduced state (alpha, tau, eta) at parameter s."""
    r = eta_tilde(s, p)
    tau = tau_tilde(r, p)
    return ReducedState(-tau * tau / (2.0 * r), tau, r)


@dataclass(frozen=True)
class SolitonSample:
    s: float
    point: np.ndarray


def soliton_curves(
    p: LightlikeSolitonParams, s_grid: Sequence[float], alpha_tol: float = 1e-10
) -> tuple[list[SolitonSample], list[SolitonSample]]:
    """Closed-form inverse-flow soliton curve X and its partner Y.

    Componentwise, with alpha = -tau^2/(2 eta) and y3 = (eta*x3 + tau)/alpha:

        X = ( -(x3^2+alpha^2)/(2 alpha), (-x3^2+alpha^2)/(2 alpha), x3 )
        Y = ( -(y3^2+eta^2)/(2 eta),     (-y3^2+eta^2)/(2 eta),     y3 )

    Both lie on the cone identically; -Y is a curvature-flow soliton.
    Raises DegenerateAlphaError at grid points where tau crosses zero; use
    LightlikeSolitonParams.split_points to partition the grid first.
    """
    xs: list[SolitonSample] = []
    ys: list[SolitonSample] = []
    for s in s_grid:
        r = eta_tilde(float(s), p)
        tau = tau_tilde(r, p)
        alpha = -tau * tau / (2.0 * r)
        if abs(alpha) <= alpha_tol:
            raise DegenerateAlphaError(
                f"alpha vanished at s={s!r} (tau zero crossing); split the grid there"
            )
        x3 = x3_tilde(r, p)
        y3 = (r * x3 + tau) / alpha
        X = np.array([-(x3 * x3 + alpha * alpha) / (2 * alpha), (-x3 * x3 + alpha * alpha) / (2 * alpha), x3])
        Y = np.array([-(y3 * y3 + r * r) / (2 * r), (-y3 * y3 + r * r) / (2 * r), y3])
        xs.append(SolitonSample(float(s), X))
        ys.append(SolitonSample(float(s), Y))
    return xs, ys
