"""Integrator: accuracy, dense output, events, stop reasons, intervals."""

import math

import numpy as np
import pytest

from conecurve.errors import InvalidConfigError, RhsFailureError
from conecurve.ode import (
    Event,
    IntegratorConfig,
    StopReason,
    integrate,
    integrate_two_sided,
    locate_events,
)
from conecurve.reduced import FlowParams, VectorClass, cf_field, icf_field


def oscillator(s, y):
    return np.array([y[1], -y[0]])


def test_config_validation():
    with pytest.raises(InvalidConfigError):
        IntegratorConfig(rel_tol=-1)
    with pytest.raises(InvalidConfigError):
        IntegratorConfig(min_step=1.0, max_step=0.5)
    with pytest.raises(InvalidConfigError):
        IntegratorConfig(event_tol=0.0)


def test_harmonic_oscillator_period():
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, max_step=10.0)
    traj = integrate(oscillator, [1.0, 0.0], (0.0, 2 * math.pi), cfg)
    assert traj.stop is StopReason.SPAN_EXHAUSTED
    s_end, y_end, _ = traj.samples[-1]
    assert s_end == pytest.approx(2 * math.pi, abs=1e-12)
    assert np.abs(y_end - [1.0, 0.0]).max() < 1e-8


def test_error_scales_with_tolerance():
    errs = []
    for tol in (1e-6, 1e-8, 1e-10, 1e-12):
        cfg = IntegratorConfig(rel_tol=tol, abs_tol=tol, max_step=10.0)
        traj = integrate(oscillator, [1.0, 0.0], (0.0, 2 * math.pi), cfg)
        errs.append(np.abs(traj.samples[-1][1] - [1.0, 0.0]).max())
        assert errs[-1] < 500 * tol
    assert errs[-1] < errs[0] * 1e-3


def test_dense_output_matches_solution():
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, max_step=10.0)
    traj = integrate(oscillator, [1.0, 0.0], (0.0, 2 * math.pi), cfg)
    ss = np.linspace(0, 2 * math.pi, 700)
    err = max(abs(traj.interpolate(s)[0] - math.cos(s)) for s in ss)
    assert err < 1e-8


def test_backward_forward_consistency():
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12)
    p = FlowParams(1.0, -0.5, VectorClass.TIMELIKE)
    y0 = np.array([-1.5, 0.7, (-1 - 0.49) / (2 * -1.5)])
    fwd = integrate(cf_field(p), y0, (0.0, 10.0), cfg)
    back = integrate(cf_field(p), fwd.samples[-1][1], (10.0, 0.0), cfg)
    assert np.abs(back.samples[0][1] - y0).max() < 10 * 1e-8


def test_fixed_point_stays_fixed():
    p = FlowParams(1.0, -0.5, VectorClass.TIMELIKE)
    cfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14, max_step=1.0)
    psi_p = np.array([-1.0, 0.0, 0.5])
    traj = integrate(cf_field(p), psi_p, (0.0, 100.0), cfg)
    drift = max(float(np.abs(y - psi_p).max()) for _, y, _ in traj.samples)
    assert drift <= 1e-10


def test_blowup_and_interval_estimates():
    p = FlowParams(1.0, 0.0, VectorClass.TIMELIKE)
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, blowup_norm=1e6, max_span=60.0)
    y0 = np.array([-1.0, 1.0, 1.0])
    bwd = integrate(cf_field(p), y0, (0.0, -50.0), cfg)
    assert bwd.stop is StopReason.BLOW_UP
    assert bwd.omega_minus is not None and math.isfinite(bwd.omega_minus)
    assert bwd.omega_plus is None
    fwd = integrate(cf_field(p), y0, (0.0, 50.0), cfg)
    assert fwd.stop is StopReason.SPAN_EXHAUSTED
    assert fwd.omega_plus == math.inf


def test_max_span_clips_request():
    cfg = IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10, max_step=5.0, max_span=5.0)
    traj = integrate(oscillator, [1.0, 0.0], (0.0, 50.0), cfg)
    assert traj.stop is StopReason.SPAN_EXHAUSTED
    assert traj.s_max == pytest.approx(5.0, abs=1e-12)


def test_singular_barrier_stop():
    # inverse flow from (-1, 0, 1/2) with c = 1: tau decreases, k = 1 + tau
    # crosses zero in finite s
    p = FlowParams(1.0, 1.0, VectorClass.TIMELIKE)
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12)
    traj = integrate(icf_field(p), np.array([-1.0, 0.0, 0.5]), (0.0, 20.0), cfg)
    assert traj.stop is StopReason.SINGULAR_BARRIER
    s_stop, y_stop, _ = traj.samples[-1]
    assert 1.0 + y_stop[1] == pytest.approx(0.0, abs=1e-5)
    assert traj.omega_plus == pytest.approx(s_stop)


def test_rhs_failure_carries_location():
    def bad(s, y):
        if s > 1.0:
            raise ValueError("boom")
        return np.array([1.0])

    with pytest.raises(RhsFailureError) as exc:
        integrate(bad, [0.0], (0.0, 5.0), IntegratorConfig())
    # location is the start of the failing step; stages reach at most
    # max_step ahead of it
    assert 0.0 <= exc.value.s <= 1.0
    assert "failed within step" in str(exc.value)


def test_event_single_crossing():
    p = FlowParams(1.0, 0.0, VectorClass.TIMELIKE)
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, blowup_norm=1e3)
    traj = integrate(
        cf_field(p), np.array([-1.0, 1.0, 1.0]), (0.0, 30.0), cfg,
        events={"tau_zero": lambda s, y: y[1]},
    )
    crossings = [e for e in traj.events if e.direction != 0]
    assert len(crossings) == 1
    assert crossings[0].kind == "tau_zero"
    assert abs(traj.interpolate(crossings[0].s)[1]) < 1e-8


def test_event_constant_function_yields_none():
    cfg = IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10, max_step=5.0)
    traj = integrate(oscillator, [1.0, 0.0], (0.0, 6.0), cfg,
                     events={"one": lambda s, y: 1.0})
    assert traj.events == []


def test_event_k_zero_unique_for_positive_c_h_class():
    # c = 4, a = 1: k = c + a*tau has exactly one zero on an H trajectory
    p = FlowParams(1.0, 4.0, VectorClass.TIMELIKE)
    cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, blowup_norm=1e6)
    traj = integrate_two_sided(
        cf_field(p), np.array([-1.0, 1.0, 1.0]), 40.0, cfg,
        events={"k_zero": lambda s, y: 4.0 + y[1]},
    )
    crossings = [e for e in traj.events if e.direction != 0]
    assert len(crossings) == 1


def test_event_idempotence():
    cfg = IntegratorConfig(rel_tol=1e-9, abs_tol=1e-12, max_step=2.0)
    traj = integrate(oscillator, [1.0, 0.0], (0.0, 10.0), cfg)
    f = lambda s, y: y[0]
    first = locate_events(traj, f, kind="x_zero", event_tol=1e-10)
    second = locate_events(traj, f, kind="x_zero", event_tol=1e-10)
    assert [(e.s, e.direction) for e in first] == [(e.s, e.direction) for e in second]
    assert len(first) == 3  # cos zeros in (0, 10)


def test_tangential_event_direction_zero():
    cfg = IntegratorConfig(rel_tol=1e-9, abs_tol=1e-12, max_step=2.0)
    traj = integrate(oscillator, [1.0, 0.0], (0.0, 6.0), cfg)
    events = locate_events(traj, lambda s, y: 1.0 + y[0], kind="dip", event_tol=1e-10)
    assert len(events) == 1
    assert events[0].direction == 0
    assert events[0].s == pytest.approx(math.pi, abs=1e-5)


def test_two_sided_merge():
    cfg = IntegratorConfig(rel_tol=1e-9, abs_tol=1e-12, max_step=2.0)
    traj = integrate_two_sided(oscillator, [1.0, 0.0], 3.0, cfg)
    assert traj.s_min == pytest.approx(-3.0)
    assert traj.s_max == pytest.approx(3.0)
    assert traj.interpolate(-1.0)[0] == pytest.approx(math.cos(1.0), abs=1e-7)
    ss = [s for s, _, _ in traj.samples]
    assert ss == sorted(ss)
