"""Adaptive Dormand-Prince 5(4) integration with dense output and events.

Generic over the right-hand side.  Integration stops at the span end, at
blow-up of the state norm, at step underflow, or when the right-hand side
signals a singular barrier; the stop reason and the corresponding estimate
of the maximal-interval end are recorded on the trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import CurvatureSingularError, InvalidConfigError, RhsFailureError

# Dormand & Prince (1980) 5(4) pair, FSAL.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
# weights of the embedded error estimate (5th order minus 4th order)
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# 4th-order continuous extension (Shampine); interpolant is
# y(s0 + x*h) = y0 + h * (K^T P) @ [x, x^2, x^3, x^4]
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_ORDER_EXP = -1 / 5


class StopReason(Enum):
    SPAN_EXHAUSTED = "span_exhausted"
    BLOW_UP = "blow_up"
    STEP_UNDERFLOW = "step_underflow"
    SINGULAR_BARRIER = "singular_barrier"


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = 1.0
    min_step: float = 1e-13
    blowup_norm: float = 1e8
    max_span: float = 200.0
    event_tol: float = 1e-10

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidConfigError("tolerances must be positive")
        if not (0 < self.min_step < self.max_step):
            raise InvalidConfigError("need 0 < min_step < max_step")
        if not (self.blowup_norm > 0 and self.max_span > 0 and self.event_tol > 0):
            raise InvalidConfigError("blowup_norm, max_span and event_tol must be positive")


@dataclass(frozen=True)
class Event:
    kind: str
    s: float
    state: np.ndarray
    direction: int  # sign of the crossing as s increases; 0 for tangential dips


@dataclass(frozen=True)
class _Segment:
    """One accepted step with its dense-output polynomial."""

    s0: float
    h: float  # signed
    y0: np.ndarray
    Q: np.ndarray  # (n, 4)

    @property
    def s_lo(self) -> float:
        return min(self.s0, self.s0 + self.h)

    @property
    def s_hi(self) -> float:
        return max(self.s0, self.s0 + self.h)

    def eval(self, s: float) -> np.ndarray:
        x = (s - self.s0) / self.h
        powers = np.array([x, x * x, x**3, x**4])
        return self.y0 + self.h * (self.Q @ powers)


class DenseTrajectory:
    """Integration output: nodes, dense interpolant, events and stop data.

    ``omega_minus``/``omega_plus`` estimate the ends of the maximal interval:
    a finite value is the location of a detected barrier (blow-up, step
    underflow or singular right-hand side), ``+-inf`` marks a span exhausted
    with no barrier found (a finite-horizon proxy for an infinite end), and
    ``None`` marks an end the integration did not probe.
    """

    def __init__(self, segments, nodes, stop, omega_minus, omega_plus, direction):
        order = np.argsort([seg.s_lo for seg in segments]) if segments else []
        self._segments = [segments[i] for i in order]
        self._lows = np.array([seg.s_lo for seg in self._segments])
        self._nodes = sorted(nodes, key=lambda t: t[0])
        self.stop: StopReason = stop
        self.omega_minus = omega_minus
        self.omega_plus = omega_plus
        self.direction = direction
        self.events: list[Event] = []

    @property
    def samples(self):
        """Accepted nodes as (s, state, derivative) triples, ascending in s."""
        return list(self._nodes)

    @property
    def s_min(self) -> float:
        return self._nodes[0][0]

    @property
    def s_max(self) -> float:
        return self._nodes[-1][0]

    @property
    def segments(self):
        return list(self._segments)

    def interpolate(self, s: float) -> np.ndarray:
        if not self._segments:
            if abs(s - self._nodes[0][0]) < 1e-14:
                return self._nodes[0][1].copy()
            raise ValueError("trajectory has no extent")
        lo, hi = self.s_min, self.s_max
        if s < lo - 1e-12 or s > hi + 1e-12:
            raise ValueError(f"s={s!r} outside covered range [{lo!r}, {hi!r}]")
        i = int(np.searchsorted(self._lows, s, side="right")) - 1
        i = min(max(i, 0), len(self._segments) - 1)
        return self._segments[i].eval(s)

    def sample_dense(self, n: int):
        ss = np.linspace(self.s_min, self.s_max, n)
        return ss, np.array([self.interpolate(s) for s in ss])


def _error_norm(err, y0, y1, cfg):
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_step(rhs, s0, y0, f0, direction, cfg, span):
    scale = cfg.abs_tol + cfg.rel_tol * np.abs(y0)
    d0 = float(np.sqrt(np.mean((y0 / scale) ** 2)))
    d1 = float(np.sqrt(np.mean((f0 / scale) ** 2)))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    try:
        f1 = np.asarray(rhs(s0 + direction * h0, y0 + direction * h0 * f0), dtype=float)
        d2 = float(np.sqrt(np.mean(((f1 - f0) / scale) ** 2))) / h0
    except Exception:
        d2 = d1
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, cfg.max_step, span)


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    psi0,
    s_range: tuple[float, float],
    cfg: IntegratorConfig | None = None,
    events: Mapping[str, Callable[[float, np.ndarray], float]] | None = None,
) -> DenseTrajectory:
    """Integrate y' = rhs(s, y) over s_range with embedded error control.

    Backward integration is requested with s_range[1] < s_range[0].  The
    requested span is clipped to cfg.max_span.  Sign changes of every event
    function are localized to cfg.event_tol by bisection on the dense
    interpolant.  A CurvatureSingularError raised by rhs stops the run with
    StopReason.SINGULAR_BARRIER at the last accepted node; any other
    exception propagates as RhsFailureError.
    """
    cfg = cfg or IntegratorConfig()
    y = np.asarray(psi0, dtype=float).copy()
    if y.ndim != 1 or not np.all(np.isfinite(y)):
        raise InvalidConfigError("initial state must be a finite 1-d vector")
    s0, s1 = float(s_range[0]), float(s_range[1])
    if s0 == s1:
        raise InvalidConfigError("degenerate s_range")
    direction = 1.0 if s1 > s0 else -1.0
    span = min(abs(s1 - s0), cfg.max_span)
    s_end = s0 + direction * span

    try:
        f = np.asarray(rhs(s0, y), dtype=float)
    except CurvatureSingularError as exc:
        raise RhsFailureError("singular barrier at the initial state", s0, exc) from exc
    except Exception as exc:
        raise RhsFailureError("right-hand side failed at the initial state", s0, exc) from exc

    n = len(y)
    segments: list[_Segment] = []
    nodes: list[tuple[float, np.ndarray, np.ndarray]] = [(s0, y.copy(), f.copy())]
    stop = StopReason.SPAN_EXHAUSTED

    s = s0
    h = _initial_step(rhs, s0, y, f, direction, cfg, span)
    h = max(h, cfg.min_step)
    K = np.empty((7, n))

    while True:
        remaining = abs(s_end - s)
        if remaining <= max(cfg.min_step, 1e-13 * max(1.0, abs(s))):
            break
        h = min(h, cfg.max_step, remaining)
        step_failed_singular = False
        while True:  # attempt / reject loop for the current node
            if h < cfg.min_step or s + direction * h == s:
                stop = (
                    StopReason.SINGULAR_BARRIER if step_failed_singular else StopReason.STEP_UNDERFLOW
                )
                break
            hs = direction * h
            K[0] = f
            try:
                for i in range(1, 7):
                    if i < 6:
                        dy = K[:i].T @ _A[i - 1]
                        y_stage = y + hs * dy
                        K[i] = rhs(s + _C[i] * hs, y_stage)
                    else:
                        y1 = y + hs * (K[:6].T @ _A[5])
                        K[6] = rhs(s + hs, y1)
            except CurvatureSingularError:
                step_failed_singular = True
                h *= 0.25
                continue
            except Exception as exc:
                raise RhsFailureError(
                    f"right-hand side failed within step [{s!r}, {s + hs!r}]", s, exc
                ) from exc
            step_failed_singular = False
            err = hs * (K.T @ _E)
            if not np.all(np.isfinite(y1)):
                err_norm = math.inf
            else:
                err_norm = _error_norm(err, y, y1, cfg)
            if err_norm <= 1.0:
                factor = _MAX_FACTOR if err_norm == 0 else min(
                    _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err_norm**_ORDER_EXP)
                )
                segments.append(_Segment(s, hs, y.copy(), K.T @ _P))
                s = s + hs
                y = y1.copy()
                f = K[6].copy()
                nodes.append((s, y.copy(), f.copy()))
                h = h * factor
                break
            if not math.isfinite(err_norm):
                h *= _MIN_FACTOR
            else:
                h *= max(_MIN_FACTOR, _SAFETY * err_norm**_ORDER_EXP)
        if stop in (StopReason.STEP_UNDERFLOW, StopReason.SINGULAR_BARRIER):
            break
        if float(np.linalg.norm(y)) > cfg.blowup_norm:
            stop = StopReason.BLOW_UP
            break

    if stop is StopReason.SPAN_EXHAUSTED:
        end_estimate = direction * math.inf
    else:
        end_estimate = s
    if direction > 0:
        omega_minus, omega_plus = None, end_estimate
    else:
        omega_minus, omega_plus = end_estimate, None

    traj = DenseTrajectory(segments, nodes, stop, omega_minus, omega_plus, direction)
    if events:
        found: list[Event] = []
        for kind, func in events.items():
            found.extend(locate_events(traj, func, kind=kind, event_tol=cfg.event_tol))
        traj.events = sorted(found, key=lambda e: e.s)
    return traj


def _bisect_zero(seg_eval, f, sa, sb, fa, fb, tol):
    while abs(sb - sa) > tol:
        sm = 0.5 * (sa + sb)
        fm = f(sm, seg_eval(sm))
        if fm == 0.0:
            return sm
        if (fa < 0) != (fm < 0):
            sb, fb = sm, fm
        else:
            sa, fa = sm, fm
    return 0.5 * (sa + sb)


def locate_events(
    traj: DenseTrajectory,
    func: Callable[[float, np.ndarray], float],
    kind: str = "event",
    event_tol: float = 1e-10,
    scan_points: int = 8,
) -> list[Event]:
    """Find zeros of func(s, state) along the dense interpolant.

    Every sign change is bracketed on a per-segment scan grid and bisected to
    event_tol.  A dip of |func| below event_tol strictly inside a segment,
    without sign change and with both segment endpoints above tolerance, is
    reported as a tangential event with direction 0.
    """
    out: list[Event] = []
    last_s: float | None = None
    for seg in traj.segments:
        xs = np.linspace(seg.s_lo, seg.s_hi, scan_points + 2)
        ys = [seg.eval(x) for x in xs]
        vals = np.array([func(x, yv) for x, yv in zip(xs, ys)])
        crossed = False
        for j in range(len(xs) - 1):
            fa, fb = vals[j], vals[j + 1]
            if fa == 0.0:
                s_star = float(xs[j])
                if last_s is None or abs(s_star - last_s) > max(event_tol, 1e-13):
                    direction = int(np.sign(fb)) if fb != 0 else 0
                    out.append(Event(kind, s_star, seg.eval(s_star), direction))
                    last_s = s_star
                crossed = True
                continue
            if (fa < 0) != (fb < 0):
                s_star = _bisect_zero(seg.eval, func, float(xs[j]), float(xs[j + 1]), fa, fb, event_tol)
                if last_s is None or abs(s_star - last_s) > max(event_tol, 1e-13):
                    out.append(Event(kind, s_star, seg.eval(s_star), 1 if fb > fa else -1))
                    last_s = s_star
                crossed = True
        if not crossed:
            absvals = np.abs(vals)
            j = int(np.argmin(absvals[1:-1])) + 1
            is_dip = absvals[j] < absvals[j - 1] and absvals[j] < absvals[j + 1]
            # a quadratic tangency sampled on this grid dips to at most a
            # quarter of the segment maximum
            worth_refining = absvals[j] < max(0.25 * float(absvals.max()), 100.0 * event_tol)
            if is_dip and worth_refining and absvals[0] > event_tol and absvals[-1] > event_tol:
                s_star, f_star = _golden_min(
                    lambda s: abs(func(s, seg.eval(s))), float(xs[j - 1]), float(xs[j + 1])
                )
                if f_star < event_tol and (
                    last_s is None or abs(s_star - last_s) > max(event_tol, 1e-13)
                ):
                    out.append(Event(kind, s_star, seg.eval(s_star), 0))
                    last_s = s_star
    return out


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(g, a, b, iters=80):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if b - a < 1e-15 * max(1.0, abs(a)):
            break
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - _INVPHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INVPHI * (b - a)
            gd = g(d)
    x = 0.5 * (a + b)
    return x, g(x)


@dataclass
class TwoSidedTrajectory:
    """Backward and forward runs from a common initial state, merged."""

    backward: DenseTrajectory | None
    forward: DenseTrajectory
    s_center: float

    @property
    def omega_minus(self):
        return self.backward.omega_minus if self.backward is not None else None

    @property
    def omega_plus(self):
        return self.forward.omega_plus

    @property
    def s_min(self) -> float:
        return self.backward.s_min if self.backward is not None else self.forward.s_min

    @property
    def s_max(self) -> float:
        return self.forward.s_max

    @property
    def events(self) -> list[Event]:
        ev = list(self.forward.events)
        if self.backward is not None:
            ev.extend(self.backward.events)
        return sorted(ev, key=lambda e: e.s)

    @property
    def samples(self):
        merged = list(self.forward.samples)
        if self.backward is not None:
            merged.extend(t for t in self.backward.samples if t[0] < self.s_center)
        return sorted(merged, key=lambda t: t[0])

    def interpolate(self, s: float) -> np.ndarray:
        if self.backward is not None and s < self.s_center:
            return self.backward.interpolate(s)
        return self.forward.interpolate(s)


def integrate_two_sided(
    rhs,
    psi0,
    span: float,
    cfg: IntegratorConfig | None = None,
    events=None,
    s_center: float = 0.0,
) -> TwoSidedTrajectory:
    """Integrate both directions over [s_center - span, s_center + span]."""
    fwd = integrate(rhs, psi0, (s_center, s_center + span), cfg, events)
    bwd = integrate(rhs, psi0, (s_center, s_center - span), cfg, events)
    return TwoSidedTrajectory(bwd, fwd, s_center)
