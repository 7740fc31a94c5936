"""Command-line front end: simulate, reconstruct, evolve, verify, sweep.

Configuration comes from defaults, then a flat key=value config file, then
CLI flags; the environment variable CONECURVE_OUT overrides the output
directory last.  Identical config and seed produce identical output bytes.

Exit codes: 0 success; 1 failed verification check; 2 invalid config or
initial state (including off-constraint states and k=0 homothety); 3
integrator failure; 4 no initial frame found.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from . import cone, evolution, solitons
from .errors import (
    ConeCurveError,
    InvalidConfigError,
    InvalidSpecError,
    NoFrameFoundError,
    NotOnConstraintError,
    OutOfDomainError,
    ReconstructionMismatchError,
    RhsFailureError,
    ZeroStateError,
)
from .minkowski import lorentz_inner
from .ode import IntegratorConfig, StopReason, integrate_two_sided
from .output import fmt, read_csv, svg_document, write_csv, write_svg, write_text
from .reduced import (
    ConstraintClass,
    FlowKind,
    FlowParams,
    ReducedState,
    VectorClass,
    cf_field,
    classify_initial,
    constraint_value,
    fixed_points,
    icf_field,
    jacobian_cf,
    rhs_cf,
    sample_state,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_INTEGRATOR = 3
EXIT_NO_FRAME = 4

_CLASS_FOR_VECTOR = {
    VectorClass.TIMELIKE: ConstraintClass.H,
    VectorClass.LIGHTLIKE: ConstraintClass.C,
    VectorClass.SPACELIKE: ConstraintClass.S,
}


@dataclass
class RunConfig:
    a: float = 1.0
    c: float = 0.0
    vector: str = "timelike"
    flow: str = "cf"
    alpha0: float | None = None
    tau0: float | None = None
    eta0: float | None = None
    span: float = 10.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    blowup_norm: float = 1e8
    event_tol: float = 1e-10
    n_samples: int = 801
    out: str = "out"
    svg: bool = False
    seed: int = 0

    @property
    def vector_class(self) -> VectorClass:
        try:
            return VectorClass(self.vector)
        except ValueError as exc:
            raise InvalidConfigError(
                f"field 'vector': {self.vector!r} is not one of timelike/lightlike/spacelike"
            ) from exc

    @property
    def flow_kind(self) -> FlowKind:
        try:
            return FlowKind(self.flow)
        except ValueError as exc:
            raise InvalidConfigError(f"field 'flow': {self.flow!r} is not one of cf/icf") from exc

    def params(self) -> FlowParams:
        try:
            return FlowParams(self.a, self.c, self.vector_class, self.flow_kind)
        except ValueError as exc:
            raise InvalidConfigError(f"field 'a': {exc}") from exc

    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            blowup_norm=self.blowup_norm,
            event_tol=self.event_tol,
        )

    def initial_state(self) -> ReducedState:
        """Explicit state if all three components are given, else a seeded draw.

        The state is validated against the constraint set matching the
        reference vector class.
        """
        given = [self.alpha0, self.tau0, self.eta0]
        want = _CLASS_FOR_VECTOR[self.vector_class]
        if all(v is not None for v in given):
            psi0 = ReducedState(self.alpha0, self.tau0, self.eta0)
            cls = classify_initial(psi0)
            if cls is not want:
                raise NotOnConstraintError(
                    f"fields 'alpha0/tau0/eta0': state {tuple(psi0)!r} lies on {cls.value}, "
                    f"but vector={self.vector!r} requires {want.value}"
                )
            return psi0
        if any(v is not None for v in given):
            missing = [n for n, v in zip(("alpha0", "tau0", "eta0"), given) if v is None]
            raise InvalidConfigError(f"fields {missing!r}: give all of alpha0/tau0/eta0 or none")
        rng = np.random.default_rng(self.seed)
        return sample_state(want, rng)


def parse_config_file(path: str) -> dict:
    """Flat key=value file; '#' starts a comment, blank lines ignored."""
    values: dict[str, str] = {}
    with open(path) as fh:
        for ln, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidConfigError(f"{path}:{ln}: expected key=value, got {raw.rstrip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key] = value
    return values


def _coerce(rc: RunConfig, key: str, raw: str) -> None:
    field_types = {f.name: f.type for f in fields(RunConfig)}
    if key not in field_types:
        raise InvalidConfigError(f"unknown config key {key!r}")
    current = getattr(rc, key)
    if key in ("vector", "flow", "out"):
        setattr(rc, key, raw)
    elif key == "svg":
        setattr(rc, key, raw.lower() in ("1", "true", "yes", "on"))
    elif key in ("seed", "n_samples"):
        setattr(rc, key, int(raw))
    else:
        setattr(rc, key, float(raw))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    rc = RunConfig()
    if getattr(args, "config", None):
        for key, raw in parse_config_file(args.config).items():
            _coerce(rc, key, raw)
    for name in (
        "a", "c", "vector", "flow", "alpha0", "tau0", "eta0", "span",
        "rel_tol", "abs_tol", "blowup_norm", "event_tol", "n_samples", "out", "seed",
    ):
        value = getattr(args, name, None)
        if value is not None:
            setattr(rc, name, value)
    if getattr(args, "svg", False):
        rc.svg = True
    env_out = os.environ.get("CONECURVE_OUT")
    if env_out:
        rc.out = env_out
    return rc


def _curvature_of_tau(rc: RunConfig, tau: float) -> float:
    """Curvature of the underlying curve: c+a*tau for CF, its reciprocal for ICF."""
    u = rc.c + rc.a * tau
    if rc.flow_kind is FlowKind.CF:
        return u
    return math.inf if u == 0 else 1.0 / u


def _stop_lines(traj) -> list[str]:
    def omega(v):
        return "none" if v is None else fmt(v)

    return [
        f"stop forward={traj.forward.stop.value} omega_plus={omega(traj.omega_plus)}",
        f"stop backward={traj.backward.stop.value} omega_minus={omega(traj.omega_minus)}",
    ]


def _event_lines(traj) -> list[str]:
    return [
        f"event kind={e.kind} s={fmt(e.s)} direction={e.direction:+d}"
        for e in traj.events
    ]


def _run_trajectory(rc: RunConfig, psi0: ReducedState):
    params = rc.params()
    if rc.flow_kind is FlowKind.CF:
        field = cf_field(params)
    else:
        field = icf_field(params)
    a, c = rc.a, rc.c
    events = {
        "tau_zero": lambda s, y: y[1],
        "k_zero": lambda s, y: c + a * y[1],
    }
    return integrate_two_sided(field, psi0.array(), rc.span, rc.integrator(), events)


def cmd_simulate(rc: RunConfig) -> int:
    psi0 = rc.initial_state()
    cls = classify_initial(psi0)
    traj = _run_trajectory(rc, psi0)
    rows = []
    for s, y, _ in traj.samples:
        rows.append(
            (s, y[0], y[1], y[2], _curvature_of_tau(rc, y[1]), constraint_value(y) - cls.gamma)
        )
    footer = _event_lines(traj) + _stop_lines(traj) + [f"seed={rc.seed}", f"class={cls.value}"]
    path = os.path.join(rc.out, "trajectory.csv")
    write_csv(path, ["s", "alpha", "tau", "eta", "k", "constraint_residual"], rows, footer)
    report = "\n".join(
        [
            f"class={cls.value}",
            f"a={fmt(rc.a)} c={fmt(rc.c)} vector={rc.vector} flow={rc.flow}",
            f"psi0={fmt(psi0.alpha)},{fmt(psi0.tau)},{fmt(psi0.eta)}",
            *_event_lines(traj),
            *_stop_lines(traj),
        ]
    )
    write_text(os.path.join(rc.out, "trajectory_report.txt"), report + "\n")
    print(f"wrote {path} ({len(rows)} rows, {len(traj.events)} events)")
    return EXIT_OK


def cmd_reconstruct(rc: RunConfig) -> int:
    if rc.flow_kind is not FlowKind.CF:
        raise InvalidConfigError("field 'flow': reconstruct drives the CF system; use flow=cf")
    psi0 = rc.initial_state()
    traj = _run_trajectory(rc, psi0)
    samples = cone.reconstruct_curve(traj, rc.params(), rc.integrator(), n_samples=rc.n_samples)
    rows = [
        (sm.s, sm.X[0], sm.X[1], sm.X[2], sm.Y[0], sm.Y[1], sm.Y[2], sm.k) for sm in samples
    ]
    footer = _event_lines(traj) + _stop_lines(traj)
    curve_path = os.path.join(rc.out, "curve.csv")
    write_csv(curve_path, ["s", "x1", "x2", "x3", "y1", "y2", "y3", "k"], rows, footer)

    components = cone.split_icf_components(samples)
    for i, comp in enumerate(components, start=1):
        crows = [(d.s, d.point[0], d.point[1], d.point[2], d.k) for d in comp.samples]
        write_csv(
            os.path.join(rc.out, f"component_{i}.csv"),
            ["s", "x1", "x2", "x3", "k"],
            crows,
            [f"s_range=[{fmt(comp.s_lo)}, {fmt(comp.s_hi)}]"],
        )
    if rc.svg:
        polys = [np.array([[sm.X[1], sm.X[2]] for sm in samples])]
        labels = ["X"]
        for i, comp in enumerate(components, start=1):
            polys.append(np.array([[d.point[1], d.point[2]] for d in comp.samples]))
            labels.append(f"-Y ({i})")
        rim = max(float(sm.X[0]) for sm in samples)
        doc = svg_document(polys, labels, circles=[(0.0, 0.0, rim)], title="cone projection (x2, x3)")
        write_svg(os.path.join(rc.out, "curve.svg"), doc)
        side = [np.array([[math.hypot(sm.X[1], sm.X[2]), sm.X[0]] for sm in samples])]
        rmax = max(float(p[:, 0].max()) for p in side)
        doc2 = svg_document(
            side,
            ["X"],
            ref_lines=[(0.0, 0.0, rmax, rmax), (0.0, 0.0, rmax, -rmax)],
            title="side view (radius, x1)",
        )
        write_svg(os.path.join(rc.out, "curve_side.svg"), doc2)
    print(f"wrote {curve_path} and {len(components)} component file(s)")
    return EXIT_OK


def cmd_homothety(rc: RunConfig, k: float, t_values: list[float]) -> int:
    if k == 0:
        raise InvalidConfigError("field 'k': homothety evolution requires k != 0")
    flow = rc.flow_kind
    hf = evolution.homothety_flow(k, flow)
    rows = []
    for t in t_values:
        if hf.contains(t):
            rows.append((t, hf.f(t), hf.k_hat(t), 1))
        else:
            rows.append((t, math.nan, math.nan, 0))
    path = os.path.join(rc.out, "homothety.csv")
    write_csv(
        path,
        ["t", "f", "k_hat", "in_domain"],
        rows,
        [f"k={fmt(k)} flow={flow.value} J=({fmt(hf.t_lo)}, {fmt(hf.t_hi)})"],
    )
    print(f"wrote {path}")
    return EXIT_OK


def cmd_soliton(rc: RunConfig, integration_const: float) -> int:
    eta0 = rc.eta0 if rc.eta0 is not None else 1.0
    tau0 = rc.tau0 if rc.tau0 is not None else 2.0 * rc.a * eta0 * eta0 / 3.0  # makes D = 0
    try:
        p = solitons.LightlikeSolitonParams(rc.a, eta0, tau0, integration_const)
    except ValueError as exc:
        raise InvalidConfigError(str(exc)) from exc
    s_hi = p.s_max - 0.05 * max(1.0, abs(p.s_max))
    s_lo = s_hi - rc.span
    splits = [s for s in p.split_points() if s_lo < s < s_hi]
    margin = 1e-3 * rc.span
    cuts = [s_lo, *[v for pt in splits for v in (pt - margin, pt + margin)], s_hi]
    grids = [
        np.linspace(cuts[i], cuts[i + 1], max(8, rc.n_samples // (len(cuts) // 2)))
        for i in range(0, len(cuts), 2)
    ]
    xs, ys = [], []
    for grid in grids:
        gx, gy = solitons.soliton_curves(p, grid)
        xs.extend(gx)
        ys.extend(gy)
    footer = [
        f"a={fmt(p.a)} eta0={fmt(p.eta0)} tau0={fmt(p.tau0)} C={fmt(p.C)}",
        f"C1={fmt(p.c1)} D={fmt(p.D)} domain=s<{fmt(p.s_max)}",
    ]
    write_csv(
        os.path.join(rc.out, "soliton_x.csv"),
        ["s", "x1", "x2", "x3"],
        [(sm.s, *sm.point) for sm in xs],
        footer,
    )
    write_csv(
        os.path.join(rc.out, "soliton_y.csv"),
        ["s", "y1", "y2", "y3"],
        [(sm.s, *sm.point) for sm in ys],
        footer,
    )
    err = _soliton_oracle_error(p, (s_lo, s_hi))
    report = footer + [f"splits={','.join(fmt(s) for s in splits) or 'none'}",
                       f"max_error_vs_numeric={fmt(err)}"]
    write_text(os.path.join(rc.out, "soliton_report.txt"), "\n".join(report) + "\n")
    if rc.svg:
        polys = [
            np.array([[sm.point[1], sm.point[2]] for sm in xs]),
            np.array([[-sm.point[1], -sm.point[2]] for sm in ys]),
        ]
        doc = svg_document(polys, ["X (ICF soliton)", "-Y (CF soliton)"], title="lightlike solitons")
        write_svg(os.path.join(rc.out, "soliton.svg"), doc)
    print(f"wrote soliton curves to {rc.out} (D={fmt(p.D)}, oracle error {fmt(err)})")
    return EXIT_OK


def _soliton_oracle_error(p: solitons.LightlikeSolitonParams, s_range, n: int = 60) -> float:
    """Max deviation between the closed form and direct integration of the
    inverse-flow system from the same initial data."""
    from .ode import integrate as _integrate

    params = FlowParams(p.a, 0.0, VectorClass.LIGHTLIKE, FlowKind.ICF)
    psi0 = solitons.reduced_of(0.0, p)
    cfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)
    worst = 0.0
    s_lo, s_hi = s_range
    for lo, hi in ((0.0, s_hi), (0.0, s_lo)):
        if lo == hi:
            continue
        traj = _integrate(icf_field(params), psi0.array(), (lo, hi), cfg)
        for s in np.linspace(traj.s_min, traj.s_max, n):
            closed = solitons.reduced_of(float(s), p).array()
            worst = max(worst, float(np.abs(closed - traj.interpolate(float(s))).max()))
    return worst


_CHECK_THRESHOLDS = {
    "constraint_conservation": 1e-8,
    "invariant_r1": 1e-8,
    "invariant_r2": 1e-8,
    "fixed_point_residual": 1e-14,
    "eigenvalue_residual": 1e-12,
    "flow_equation_residual": 1e-5,
    "duality_curvature": 1e-5,
    "soliton_oracle": 1e-6,
}


def run_verification(rc: RunConfig) -> list[tuple[str, float, float, bool]]:
    """Invariant checks for the configured run; returns (name, value, threshold, ok)."""
    psi0 = rc.initial_state()
    cls = classify_initial(psi0)
    params = rc.params()
    checks: list[tuple[str, float, float, bool]] = []

    def add(name: str, value: float):
        thr = _CHECK_THRESHOLDS[name]
        checks.append((name, value, thr, value <= thr))

    # constraint and first integrals along a norm-capped trajectory; the
    # residuals are quadratic/cubic in the state, so they are only meaningful
    # in double precision while the norm stays moderate
    capped = replace(rc, blowup_norm=min(rc.blowup_norm, 50.0), rel_tol=min(rc.rel_tol, 1e-12), flow="cf")
    traj = _run_trajectory(capped, psi0)
    gamma = cls.gamma
    worst_c = worst_r1 = worst_r2 = 0.0
    from .reduced import conserved_residuals

    for s, y, f in traj.samples:
        worst_c = max(worst_c, abs(constraint_value(y) - gamma))
        r1, r2 = conserved_residuals(ReducedState(*y), float(f[1]), params, cls)
        worst_r1 = max(worst_r1, abs(r1))
        worst_r2 = max(worst_r2, abs(r2))
    add("constraint_conservation", worst_c)
    add("invariant_r1", worst_r1)
    add("invariant_r2", worst_r2)

    if rc.c != 0:
        report = fixed_points(params)
        worst_rhs = max(
            float(np.linalg.norm(rhs_cf(pt, params).array())) for pt in report.points
        )
        add("fixed_point_residual", worst_rhs)
        worst_eig = 0.0
        for pt, pair in zip(report.points, report.eigenvalues):
            numeric = np.linalg.eigvals(jacobian_cf(pt, params))
            for lam in pair:
                worst_eig = max(worst_eig, float(min(abs(numeric - lam))))
        add("eigenvalue_residual", worst_eig)

    bounded = _bounded_subspan(traj, cap=30.0)
    if bounded is not None:
        sub = _clip_trajectory(rc, psi0, bounded)
        if sub is not None:
            samples = cone.reconstruct_curve(
                sub, params, rc.integrator(), n_samples=max(rc.n_samples, 1201)
            )
            fam = evolution.isometry_family(params)
            resid = evolution.verify_flow_equation(
                lambda t: evolution.evolve_self_similar(samples[:: max(1, len(samples) // 150)], fam, t),
                0.0, 1e-4, FlowKind.CF,
            )
            add("flow_equation_residual", resid)
            keep = _longest_run(samples, k_min=0.25)
            if len(keep) > 30:
                add("duality_curvature", evolution.dual_curvature_check(keep))

    if params.vector_class is VectorClass.LIGHTLIKE and rc.c == 0:
        eta0 = psi0.eta if psi0.eta > 0 else 1.0
        tau0 = psi0.tau
        try:
            sp = solitons.LightlikeSolitonParams(rc.a, eta0, tau0)
            add("soliton_oracle", _soliton_oracle_error(sp, (-1.0, 0.9 * sp.s_max)))
        except ValueError:
            pass
    return checks


def _longest_run(samples, k_min: float):
    """Longest contiguous block of samples with |k| >= k_min."""
    best: list = []
    current: list = []
    for sm in samples:
        if abs(sm.k) >= k_min:
            current.append(sm)
            if len(current) > len(best):
                best = list(current)
        else:
            current = []
    return best


def _bounded_subspan(traj, cap: float):
    ss = [s for s, y, _ in traj.samples if float(np.linalg.norm(y)) <= cap]
    if not ss:
        return None
    lo, hi = min(ss), max(ss)
    if hi - lo < 0.5:
        return None
    return (max(lo, -abs(hi)), hi)


def _clip_trajectory(rc: RunConfig, psi0: ReducedState, bounds):
    lo, hi = bounds
    if not lo <= 0.0 <= hi:
        return None
    from .ode import integrate as _integrate

    params = rc.params()
    cfg = rc.integrator()
    fwd = _integrate(cf_field(params), psi0.array(), (0.0, hi), cfg) if hi > 0 else None
    bwd = _integrate(cf_field(params), psi0.array(), (0.0, lo), cfg) if lo < 0 else None
    from .ode import TwoSidedTrajectory

    if fwd is None:
        return None
    return TwoSidedTrajectory(bwd, fwd, 0.0)


def cmd_verify(rc: RunConfig) -> int:
    checks = run_verification(rc)
    rows = [(name, value, thr, "pass" if ok else "fail") for name, value, thr, ok in checks]
    path = os.path.join(rc.out, "verify_report.csv")
    write_csv(path, ["check", "value", "threshold", "status"], rows)
    for name, value, thr, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {fmt(value)} (threshold {fmt(thr)})")
    return EXIT_OK if all(ok for *_, ok in checks) else EXIT_CHECK_FAILED


def _sweep_row(rc: RunConfig, row: int, a: float, c: float, cls: ConstraintClass):
    rng = np.random.default_rng([rc.seed, row])
    psi0 = sample_state(cls, rng)
    sub = replace(rc, a=a, c=c, vector=cls.vector_class.value, flow="cf",
                  alpha0=psi0.alpha, tau0=psi0.tau, eta0=psi0.eta)
    try:
        traj = _run_trajectory(sub, psi0)
        k_zeros = [e for e in traj.events if e.kind == "k_zero" and e.direction != 0]
        fwd_end = traj.forward.samples[-1][1]
        bwd_end = traj.backward.samples[0][1]
        dist = math.nan
        if c != 0:
            report = fixed_points(FlowParams(a, c, cls.vector_class))
            if (c < 0 and cls is ConstraintClass.H) or (c > 0 and cls is ConstraintClass.S):
                dist = min(
                    float(np.linalg.norm(fwd_end - pt.array())) for pt in report.points
                )
        return (
            row, a, c, rc.seed, cls.value, psi0.alpha, psi0.tau, psi0.eta,
            len(k_zeros), traj.forward.stop.value, traj.backward.stop.value,
            c + a * float(fwd_end[1]), c + a * float(bwd_end[1]), dist, "",
        )
    except ConeCurveError as exc:
        return (row, a, c, rc.seed, cls.value, psi0.alpha, psi0.tau, psi0.eta,
                -1, "error", "error", math.nan, math.nan, math.nan, type(exc).__name__)


def cmd_sweep(rc: RunConfig, a_values, c_values, runs_per_cell: int, workers: int | None) -> int:
    grid = []
    row = 0
    order = [ConstraintClass.H, ConstraintClass.C, ConstraintClass.S]
    for a in a_values:
        for c in c_values:
            for j in range(runs_per_cell):
                grid.append((row, a, c, order[j % 3]))
                row += 1
    if not grid:
        raise InvalidConfigError("fields 'a_list'/'c_list': sweep grid is empty")
    max_workers = workers or min(8, len(grid))
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(lambda g: _sweep_row(rc, *g), grid))
    results.sort(key=lambda r: r[0])
    path = os.path.join(rc.out, "sweep.csv")
    write_csv(
        path,
        [
            "row", "a", "c", "seed", "class", "alpha0", "tau0", "eta0", "k_zero_count",
            "stop_forward", "stop_backward", "k_forward_end", "k_backward_end",
            "fixed_point_distance", "error",
        ],
        results,
    )
    n_err = sum(1 for r in results if r[-1])
    print(f"wrote {path} ({len(results)} rows, {n_err} errors)")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--a", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--vector", choices=["timelike", "lightlike", "spacelike"])
    p.add_argument("--flow", choices=["cf", "icf"])
    p.add_argument("--alpha0", type=float)
    p.add_argument("--tau0", type=float)
    p.add_argument("--eta0", type=float)
    p.add_argument("--span", type=float)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--abs-tol", dest="abs_tol", type=float)
    p.add_argument("--blowup-norm", dest="blowup_norm", type=float)
    p.add_argument("--event-tol", dest="event_tol", type=float)
    p.add_argument("--n-samples", dest="n_samples", type=int)
    p.add_argument("--out")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--seed", type=int)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="conecurve",
        description="Self-similar curvature-flow curves on the light cone: "
        "simulate, reconstruct, evolve, verify, sweep.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("simulate", "reconstruct", "verify"):
        sp = sub.add_parser(name)
        _add_common(sp)
    sp = sub.add_parser("homothety")
    _add_common(sp)
    sp.add_argument("--k", type=float, required=True, help="constant curvature of the conic")
    sp.add_argument("--t", dest="t_values", type=str, required=True,
                    help="comma-separated evolution times")
    sp = sub.add_parser("soliton")
    _add_common(sp)
    sp.add_argument("--int-const", dest="int_const", type=float, default=0.0,
                    help="integration constant C of the x3 antiderivative")
    sp = sub.add_parser("sweep")
    _add_common(sp)
    sp.add_argument("--a-list", dest="a_list", type=str, default="1")
    sp.add_argument("--c-list", dest="c_list", type=str, default="0")
    sp.add_argument("--runs", type=int, default=9, help="runs per (a, c) cell")
    sp.add_argument("--workers", type=int, default=None)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        rc = build_run_config(args)
        if args.command == "simulate":
            return cmd_simulate(rc)
        if args.command == "reconstruct":
            return cmd_reconstruct(rc)
        if args.command == "homothety":
            ts = [float(v) for v in args.t_values.split(",") if v.strip()]
            return cmd_homothety(rc, args.k, ts)
        if args.command == "soliton":
            return cmd_soliton(rc, args.int_const)
        if args.command == "verify":
            return cmd_verify(rc)
        if args.command == "sweep":
            a_values = [float(v) for v in args.a_list.split(",") if v.strip()]
            c_values = [float(v) for v in args.c_list.split(",") if v.strip()]
            return cmd_sweep(rc, a_values, c_values, args.runs, args.workers)
        raise InvalidConfigError(f"unknown command {args.command!r}")
    except (NotOnConstraintError, ZeroStateError, InvalidConfigError, InvalidSpecError,
            OutOfDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoFrameFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_FRAME
    except (RhsFailureError, ReconstructionMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATOR


if __name__ == "__main__":
    raise SystemExit(main())
