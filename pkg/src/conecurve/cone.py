"""Curves on the positive light-cone sheet and their reconstruction.

The sheet is parametrized by chi(rho, phi) = (rho, rho cos phi, rho sin phi),
rho > 0.  An arc-length curve X(s) = chi(rho(s), phi(s)) satisfies

    rho'' = rho k + (1 + rho'^2) / (2 rho),      phi' = 1 / rho,

so a reduced trajectory (alpha, tau, eta) with curvature k = c + a*tau lifts
to an actual cone curve by co-integrating the polar system.  The lightlike
partner has the closed form

    Y = (1/(2 rho)) * ( -(1 + rho'^2),
                        2 rho' sin phi + (1 - rho'^2) cos phi,
                        -2 rho' cos phi + (1 - rho'^2) sin phi ).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ApexSingularError,
    InvalidSpecError,
    NoFrameFoundError,
    ReconstructionMismatchError,
)
from .minkowski import Frame, lorentz_inner
from .ode import DenseTrajectory, IntegratorConfig, TwoSidedTrajectory, integrate
from .reduced import FlowParams, ReducedState, VectorClass

APEX_TOL = 1e-9


@dataclass(frozen=True)
class PolarState:
    rho: float
    rho_prime: float
    phi: float


@dataclass(frozen=True)
class CurveSample:
    """One curve point with its frame and curvature."""

    s: float
    X: np.ndarray
    T: np.ndarray
    Y: np.ndarray
    k: float


def lift(rho: float, phi: float) -> np.ndarray:
    """Cone point chi(rho, phi); lies on <X,X> = 0 identically."""
    return np.array([rho, rho * math.cos(phi), rho * math.sin(phi)])


def polar_tangent(rho_prime: float, phi: float) -> np.ndarray:
    """Unit tangent of an arc-length cone curve with phi' = 1/rho."""
    sp, cp = math.sin(phi), math.cos(phi)
    return np.array([rho_prime, rho_prime * cp - sp, rho_prime * sp + cp])


def associated_Y(state: PolarState) -> np.ndarray:
    """Lightlike frame partner of the lifted curve point.

    Satisfies <Y,Y> = 0, <X,Y> = 1 and <T,Y> = 0 identically in
    (rho, rho', phi).
    """
    rho, rp, phi = state.rho, state.rho_prime, state.phi
    if rho <= APEX_TOL:
        raise ApexSingularError(f"rho = {rho!r} at the cone apex")
    sp, cp = math.sin(phi), math.cos(phi)
    one_m = 1.0 - rp * rp
    return (0.5 / rho) * np.array(
        [-(1.0 + rp * rp), 2.0 * rp * sp + one_m * cp, -2.0 * rp * cp + one_m * sp]
    )


def polar_frame(state: PolarState, s: float = 0.0, k: float = 0.0) -> Frame:
    return Frame(lift(state.rho, state.phi), polar_tangent(state.rho_prime, state.phi),
                 associated_Y(state), s)


def polar_rhs(state: PolarState, k: float) -> tuple[float, float, float]:
    """Velocities of (rho, rho', phi) for curvature k."""
    rho, rp = state.rho, state.rho_prime
    if rho <= APEX_TOL:
        raise ApexSingularError(f"rho = {rho!r} at the cone apex")
    return (rp, rho * k + (1.0 + rp * rp) / (2.0 * rho), 1.0 / rho)


def polar_field(k_of_s: Callable[[float], float]) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator adapter for the polar system driven by a curvature profile."""

    def field(s, y):
        rho, rp = y[0], y[1]
        if rho <= APEX_TOL:
            raise ApexSingularError(f"rho = {rho!r} at the cone apex (s={s!r})")
        return np.array([rp, rho * k_of_s(s) + (1.0 + rp * rp) / (2.0 * rho), 1.0 / rho])

    return field


def frame_rhs(f: Frame, k: float):
    """Frame transport velocities (X', T', Y') = (T, kX - Y, -kT)."""
    return (f.T, k * f.X - f.Y, -k * f.T)


def frame_field(k_of_s: Callable[[float], float]) -> Callable[[float, np.ndarray], np.ndarray]:
    """Integrator adapter for the 9-dimensional frame transport system."""

    def field(s, y):
        X, T, Y = y[0:3], y[3:6], y[6:9]
        k = k_of_s(s)
        return np.concatenate([T, k * X - Y, -k * T])

    return field


def _projection_residual(vars3: np.ndarray, psi0: ReducedState, e: np.ndarray) -> np.ndarray:
    rho, rp, phi = vars3
    state = PolarState(rho, rp, phi)
    X = lift(rho, phi)
    T = polar_tangent(rp, phi)
    Y = associated_Y(state)
    return np.array(
        [
            lorentz_inner(X, e) - psi0.alpha,
            lorentz_inner(T, e) - psi0.tau,
            lorentz_inner(Y, e) - psi0.eta,
        ]
    )


def _gauss_newton(psi0, e, seed, tol, max_iter=100):
    x = np.asarray(seed, dtype=float).copy()
    for _ in range(max_iter):
        r = _projection_residual(x, psi0, e)
        nr = float(np.linalg.norm(r))
        if nr <= tol:
            return x, nr
        J = np.empty((3, 3))
        for j in range(3):
            d = 1e-7 * max(1.0, abs(x[j]))
            xp = x.copy()
            xp[j] += d
            J[:, j] = (_projection_residual(xp, psi0, e) - r) / d
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        lam = 1.0
        while lam > 1e-6:
            xn = x + lam * step
            if xn[0] > APEX_TOL:
                rn = _projection_residual(xn, psi0, e)
                if np.linalg.norm(rn) < nr:
                    x = xn
                    break
            lam *= 0.5
        else:
            break
    r = _projection_residual(x, psi0, e)
    return x, float(np.linalg.norm(r))


def initial_polar_from_reduced(
    psi0, params: FlowParams, tol: float = 1e-10, all_roots: bool = False
):
    """Polar initial data whose lifted frame projects onto psi0.

    For a timelike reference the solution is closed form
    (rho, rho', phi) = (-alpha0, -tau0, 0).  Otherwise a damped Gauss-Newton
    search over a phi seed grid solves the three projection equations; the
    root with smallest |rho'| is returned (the reflection-paired root is
    available with all_roots=True).  The constraint guarantees solvability;
    failure raises NoFrameFoundError with the best residual found.
    """
    psi0 = ReducedState(*psi0)
    e = params.vector_class.e
    if params.vector_class is VectorClass.TIMELIKE:
        if psi0.alpha >= 0:
            raise NoFrameFoundError(f"timelike reference requires alpha0 < 0, got {psi0.alpha!r}")
        state = PolarState(-psi0.alpha, -psi0.tau, 0.0)
        res = float(np.linalg.norm(_projection_residual(
            np.array([state.rho, state.rho_prime, state.phi]), psi0, e)))
        if res > tol:
            raise NoFrameFoundError("closed-form timelike frame residual too large", res)
        return [state] if all_roots else state

    roots: list[tuple[np.ndarray, float]] = []
    best = math.inf
    rho_seeds = sorted({1.0, 0.5, 2.0, abs(psi0.alpha) + 0.5, abs(psi0.eta) + 0.5})
    for rho0 in rho_seeds:
        for phi0 in np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False):
            for rp0 in (0.0, 1.0, -1.0):
                x, res = _gauss_newton(psi0, e, (rho0, rp0, phi0), tol)
                best = min(best, res)
                if res <= tol:
                    x = x.copy()
                    x[2] = math.remainder(x[2], 2.0 * math.pi)
                    if not any(
                        abs(x[0] - r[0][0]) < 1e-6
                        and abs(x[1] - r[0][1]) < 1e-6
                        and abs(math.remainder(x[2] - r[0][2], 2.0 * math.pi)) < 1e-6
                        for r in roots
                    ):
                        roots.append((x, res))
        if len(roots) >= 2:
            break
    if not roots:
        raise NoFrameFoundError(
            f"no polar frame found for psi0={tuple(psi0)!r} ({params.vector_class.value}); "
            f"best residual {best!r}",
            best,
        )
    roots.sort(key=lambda r: abs(r[0][1]))
    states = [PolarState(*r[0]) for r in roots]
    return states if all_roots else states[0]


def _curve_sample(s: float, y: np.ndarray, k: float) -> CurveSample:
    state = PolarState(y[0], y[1], y[2])
    return CurveSample(s, lift(y[0], y[2]), polar_tangent(y[1], y[2]), associated_Y(state), k)


def _trimmed_range(psi_traj, s_center: float, state_norm_cap: float):
    """Contiguous s-range around s_center where the state norm stays capped.

    Reconstruction (and its 1e-6 cross-validation) is only meaningful in
    double precision while the reduced state is moderate; near blow-up ends
    the projections grow without bound.
    """
    lo, hi = psi_traj.s_min, psi_traj.s_max
    for s, y, _ in psi_traj.samples:
        if float(np.linalg.norm(y)) > state_norm_cap:
            if s < s_center:
                lo = max(lo, s)
            else:
                hi = min(hi, s)
                break
    return min(lo, s_center), max(hi, s_center)


def reconstruct_curve(
    psi_traj: DenseTrajectory | TwoSidedTrajectory,
    params: FlowParams,
    cfg: IntegratorConfig | None = None,
    n_samples: int = 801,
    validate_tol: float = 1e-6,
    s_center: float = 0.0,
    state_norm_cap: float = 100.0,
) -> list[CurveSample]:
    """Lift a reduced curvature-flow trajectory to a curve on the cone.

    Co-integrates the polar system with k(s) = c + a*tau(s) read from the
    trajectory interpolant, then cross-checks the frame projections
    (<X,e>, <T,e>, <Y,e>) against (alpha, tau, eta) over the span; a
    disagreement beyond validate_tol raises ReconstructionMismatchError.
    The span is trimmed to the portion where |psi| <= state_norm_cap.
    """
    cfg = cfg or IntegratorConfig()
    a, c = params.a, params.c
    psi_c = psi_traj.interpolate(s_center)
    polar0 = initial_polar_from_reduced(ReducedState(*psi_c), params)
    y0 = np.array([polar0.rho, polar0.rho_prime, polar0.phi])

    def k_of_s(s: float) -> float:
        return c + a * float(psi_traj.interpolate(s)[1])

    field = polar_field(k_of_s)
    lo, hi = _trimmed_range(psi_traj, s_center, state_norm_cap)
    pieces: list[DenseTrajectory] = []
    if hi > s_center:
        pieces.append(integrate(field, y0, (s_center, hi), cfg))
    if lo < s_center:
        pieces.append(integrate(field, y0, (s_center, lo), cfg))

    def polar_at(s: float) -> np.ndarray:
        for tr in pieces:
            if tr.s_min - 1e-12 <= s <= tr.s_max + 1e-12:
                return tr.interpolate(s)
        raise ValueError(f"s={s!r} not covered by polar integration")

    s_lo = max(lo, min(tr.s_min for tr in pieces))
    s_hi = min(hi, max(tr.s_max for tr in pieces))
    ss = np.linspace(s_lo, s_hi, n_samples)
    samples = []
    worst = 0.0
    e = params.vector_class.e
    for s in ss:
        y = polar_at(s)
        sample = _curve_sample(float(s), y, k_of_s(float(s)))
        psi = psi_traj.interpolate(s)
        worst = max(
            worst,
            abs(lorentz_inner(sample.X, e) - psi[0]),
            abs(lorentz_inner(sample.T, e) - psi[1]),
            abs(lorentz_inner(sample.Y, e) - psi[2]),
        )
        samples.append(sample)
    if worst > validate_tol:
        raise ReconstructionMismatchError(
            f"projection mismatch {worst!r} exceeds {validate_tol!r} over [{s_lo!r}, {s_hi!r}]"
        )
    return samples


def reconstruct_curve_frame(
    psi_traj: DenseTrajectory | TwoSidedTrajectory,
    params: FlowParams,
    cfg: IntegratorConfig | None = None,
    n_samples: int = 801,
    s_center: float = 0.0,
    state_norm_cap: float = 100.0,
) -> list[CurveSample]:
    """Frame-transport reconstruction route (cross-check for the polar route).

    Integrates the 9-dimensional frame system from the same initial frame the
    polar route uses.
    """
    cfg = cfg or IntegratorConfig()
    a, c = params.a, params.c
    psi_c = psi_traj.interpolate(s_center)
    polar0 = initial_polar_from_reduced(ReducedState(*psi_c), params)
    f0 = polar_frame(polar0, s_center)
    y0 = np.concatenate([f0.X, f0.T, f0.Y])

    def k_of_s(s: float) -> float:
        return c + a * float(psi_traj.interpolate(s)[1])

    field = frame_field(k_of_s)
    lo, hi = _trimmed_range(psi_traj, s_center, state_norm_cap)
    pieces = []
    if hi > s_center:
        pieces.append(integrate(field, y0, (s_center, hi), cfg))
    if lo < s_center:
        pieces.append(integrate(field, y0, (s_center, lo), cfg))

    def frame_at(s: float) -> np.ndarray:
        for tr in pieces:
            if tr.s_min - 1e-12 <= s <= tr.s_max + 1e-12:
                return tr.interpolate(s)
        raise ValueError(f"s={s!r} not covered by frame integration")

    s_lo = max(lo, min(tr.s_min for tr in pieces))
    s_hi = min(hi, max(tr.s_max for tr in pieces))
    ss = np.linspace(s_lo, s_hi, n_samples)
    return [
        CurveSample(float(s), y[0:3], y[3:6], y[6:9], k_of_s(float(s)))
        for s, y in ((s, frame_at(s)) for s in ss)
    ]


def reduced_from_curve(samples: Sequence[CurveSample], e) -> list[ReducedState]:
    """Project curve samples back to reduced coordinates (<X,e>,<T,e>,<Y,e>)."""
    e = np.asarray(e, dtype=float)
    return [
        ReducedState(lorentz_inner(sm.X, e), lorentz_inner(sm.T, e), lorentz_inner(sm.Y, e))
        for sm in samples
    ]


@dataclass(frozen=True)
class DualSample:
    """Point of the inverse-flow curve -Y with its curvature 1/k."""

    s: float
    point: np.ndarray
    k: float


@dataclass(frozen=True)
class IcfComponent:
    s_lo: float
    s_hi: float
    samples: list[DualSample]


def split_icf_components(
    samples: Sequence[CurveSample], k_margin: float = 1e-8
) -> list[IcfComponent]:
    """Split -Y at the curvature zeros of X into inverse-flow components.

    Component count is the number of curvature sign changes plus one, capped
    at three (the curvature of a self-similar solution has at most two
    zeros).  Samples within k_margin of a zero are dropped so 1/k stays
    finite on every emitted component.
    """
    zeros: list[float] = []
    for i in range(len(samples) - 1):
        ka, kb = samples[i].k, samples[i + 1].k
        if ka == 0.0:
            zeros.append(samples[i].s)
        elif (ka < 0) != (kb < 0):
            t = ka / (ka - kb)
            zeros.append(samples[i].s + t * (samples[i + 1].s - samples[i].s))
    zeros = sorted(zeros)[:2]
    bounds = [samples[0].s, *zeros, samples[-1].s]
    components: list[IcfComponent] = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        part = [
            DualSample(sm.s, -sm.Y, 1.0 / sm.k)
            for sm in samples
            if lo <= sm.s <= hi and abs(sm.k) > k_margin
        ]
        if part:
            components.append(IcfComponent(lo, hi, part))
    return components


class ConicKind(Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    PARABOLA = "parabola"


@dataclass(frozen=True)
class ConicSpec:
    kind: ConicKind
    k: float
    s_range: tuple[float, float] | None = None
    n_samples: int = 601

    def __post_init__(self):
        if self.kind is ConicKind.ELLIPSE and not self.k < 0:
            raise InvalidSpecError("ellipse requires k < 0")
        if self.kind is ConicKind.HYPERBOLA and not self.k > 0:
            raise InvalidSpecError("hyperbola requires k > 0")
        if self.kind is ConicKind.PARABOLA and self.k != 0:
            raise InvalidSpecError("parabola requires k = 0")


def conic_generator(spec: ConicSpec, cfg: IntegratorConfig | None = None) -> list[CurveSample]:
    """Constant-curvature cone curves.

    The ellipse (k < 0) is the closed-form circle section rho = sqrt(-1/2k);
    hyperbola and parabola come from integrating the polar system with
    constant k, started on the plane section x3*sqrt(2k) = 1 (hyperbola) or
    a null-plane section (parabola).
    """
    cfg = cfg or IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)
    k = spec.k
    if spec.kind is ConicKind.ELLIPSE:
        rho0 = math.sqrt(-1.0 / (2.0 * k))
        lo, hi = spec.s_range if spec.s_range else (0.0, 2.0 * math.pi * rho0)
        ss = np.linspace(lo, hi, spec.n_samples)
        out = []
        for s in ss:
            phi = s / rho0
            out.append(_curve_sample(float(s), np.array([rho0, 0.0, phi]), k))
        return out
    if spec.kind is ConicKind.HYPERBOLA:
        h = 1.0 / math.sqrt(2.0 * k)
        y0 = np.array([h, 0.0, math.pi / 2.0])
    else:
        y0 = np.array([0.5, 0.0, math.pi])
    lo, hi = spec.s_range if spec.s_range else (-3.0, 3.0)
    field = polar_field(lambda s: k)
    pieces = []
    if hi > 0:
        pieces.append(integrate(field, y0, (0.0, hi), cfg))
    if lo < 0:
        pieces.append(integrate(field, y0, (0.0, lo), cfg))
    ss = np.linspace(lo, hi, spec.n_samples)
    out = []
    for s in ss:
        for tr in pieces:
            if tr.s_min - 1e-12 <= s <= tr.s_max + 1e-12:
                out.append(_curve_sample(float(s), tr.interpolate(float(s)), k))
                break
    return out
