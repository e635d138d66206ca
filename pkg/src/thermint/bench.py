"""Benchmark harness: reference integrators, error metrics, experiments.

Variational paths come from the implicit Newton solver, the explicit RK2
midpoint rule is the baseline, and the reference is either the exact
oscillator solution or an adaptive embedded Runge-Kutta 4(5) run at tight
tolerance with dense interpolation onto the benchmark grid.  All CSV
output is deterministic: fixed float formatting, no timestamps.
"""

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .continuous import ThermoState, Trajectory, continuous_rhs
from .discrete import discrete_momenta, midpoint_discretize
from .errors import ConfigError
from .solve import NewtonConfig, initialize, integrate
from .systems import get_system

__all__ = [
    "rk2_midpoint",
    "rk2_integrate",
    "reference_integrate",
    "hamiltonian_estimates",
    "ExperimentConfig",
    "MethodErrors",
    "ErrorReport",
    "run_experiment",
    "convergence_study",
    "default_newton_tol",
    "load_config",
    "write_trajectory_csv",
    "write_summary_csv",
]

METHODS = ("variational", "rk2", "reference")


def _rhs_raw(sys, q, v, S):
    qd, vd, Sd = continuous_rhs(sys, ThermoState(q, v, S))
    return qd, vd, Sd


def rk2_midpoint(sys, state, h):
    """One explicit midpoint (RK2) step on (q, v, S)."""
    q, v, S = state.q, state.v, state.S
    k1q, k1v, k1S = _rhs_raw(sys, q, v, S)
    k2q, k2v, k2S = _rhs_raw(sys, q + 0.5 * h * k1q, v + 0.5 * h * k1v, S + 0.5 * h * k1S)
    return ThermoState(q + h * k2q, v + h * k2v, S + h * k2S)


def rk2_integrate(sys, state0, h, N):
    """N RK2 midpoint steps; returns the trajectory on the uniform grid."""
    n = sys.n
    qs = np.empty((N + 1, n))
    vs = np.empty((N + 1, n))
    Ss = np.empty(N + 1)
    q, v, S = state0.q.copy(), state0.v.copy(), state0.S
    qs[0], vs[0], Ss[0] = q, v, S
    for k in range(N):
        k1q, k1v, k1S = _rhs_raw(sys, q, v, S)
        k2q, k2v, k2S = _rhs_raw(sys, q + 0.5 * h * k1q, v + 0.5 * h * k1v, S + 0.5 * h * k1S)
        q = q + h * k2q
        v = v + h * k2v
        S = S + h * k2S
        qs[k + 1], vs[k + 1], Ss[k + 1] = q, v, S
    return Trajectory(h=h, times=h * np.arange(N + 1), qs=qs, vs=vs, Ss=Ss)


def reference_integrate(sys, state0, t_final, rtol=1e-10, atol=1e-10, h=None):
    """Adaptive embedded RK 4(5) reference, densely interpolated onto the grid.

    ``h`` fixes the output grid spacing; with ``t_final = 0`` the initial
    state is returned alone.
    """
    if rtol <= 0 or atol <= 0:
        raise ConfigError("rtol and atol must be positive")
    n = sys.n
    if t_final == 0:
        return Trajectory(h=h or 1.0, times=np.zeros(1), qs=state0.q[None, :].copy(),
                          vs=state0.v[None, :].copy(), Ss=np.array([state0.S]))
    if h is None:
        raise ConfigError("a grid step h is required when t_final > 0")

    def fun(t, y):
        qd, vd, Sd = _rhs_raw(sys, y[:n], y[n : 2 * n], y[2 * n])
        return np.concatenate([qd, vd, [Sd]])

    y0 = np.concatenate([state0.q, state0.v, [state0.S]])
    sol = solve_ivp(fun, (0.0, t_final), y0, method="RK45", rtol=rtol, atol=atol,
                    dense_output=True)
    if not sol.success:
        raise ConfigError(f"reference integration failed: {sol.message}")
    N = int(round(t_final / h))
    ts = h * np.arange(N + 1)
    ys = sol.sol(ts)
    return Trajectory(h=h, times=ts, qs=ys[:n].T, vs=ys[n : 2 * n].T, Ss=ys[2 * n])


def hamiltonian_estimates(entry, d, path):
    """The three Hamiltonian series along a discrete path.

    For k = 1..N (one value per solver triple):

        H_plus[k-1]  = H(q_k, p_plus(q_{k-1}, q_k, S_{k-1}), S_k)
        H_minus[k-1] = H(q_{k-1}, p_minus(q_{k-1}, q_k, S_{k-1}), S_{k-1})
        H_vel[k-1]   = H(q_k, (q_k - q_{k-1})/h, S_k)

    using the h-scaled discrete momenta and the p = v identification of
    the catalog systems for the velocity estimator.
    """
    N = path.n_steps
    H = entry.H
    hp = np.empty(N)
    hm = np.empty(N)
    hv = np.empty(N)
    for k in range(1, N + 1):
        t = path.triple(k)
        p_minus, p_plus = discrete_momenta(d, t)
        hp[k - 1] = H(t.q1, p_plus, path.Ss[k])
        hm[k - 1] = H(t.q0, p_minus, t.S0)
        hv[k - 1] = H(t.q1, (t.q1 - t.q0) / d.h, path.Ss[k])
    return hp, hm, hv


# ---------------------------------------------------------------------------
# experiment configuration


_DEFAULT_INITIAL = {
    "oscillator": dict(q0=[0.0], v0=[1.0], S0=0.0, init_mode="exact"),
    "ideal-gas": dict(q0=[1.0], v0=[0.0], S0=10.0, init_mode="hold"),
    "van-der-waals": dict(q0=[1.0], v0=[0.0], S0=10.0, init_mode="hold"),
    "two-pistons": dict(q0=[1.0, 1.0], v0=[0.2, -0.3], S0=1.0, init_mode="taylor"),
}


def default_newton_tol(system, h):
    """Newton tolerance sized to the double-precision residual floor.

    The best attainable residual of the implicit step scales like
    ulp(|q|) / h^2, so runs whose coordinates grow large (the expanding
    pistons reach |q| ~ 10^4 on the table horizons) cannot meet the
    oscillator-scale 1e-12; likewise smaller steps raise the floor
    through the 1/h^2 factor.
    """
    if system in ("ideal-gas", "van-der-waals"):
        base = 3e-8
    elif system == "two-pistons":
        base = 1e-9
    else:
        base = 1e-12
    if h < 0.01:
        base *= (0.01 / h) ** 2
    return base


@dataclass
class ExperimentConfig:
    """One benchmark cell: a system, a step size, a horizon, methods.

    Initial data is either (q0, v0) plus an initialization mode, or an
    explicit second point q1 (the variational method then starts from it
    verbatim; the baselines fall back to v0 = (q1 - q0)/h if no v0 is
    given).
    """

    system: str
    h: float
    t_final: float
    params: dict = field(default_factory=dict)
    q0: np.ndarray = None
    v0: np.ndarray = None
    q1: np.ndarray = None
    S0: float = None
    init_mode: str = None
    methods: tuple = ("variational", "rk2")
    out: str = None
    newton_tol: float = None
    rtol: float = 1e-10
    atol: float = 1e-10

    def __post_init__(self):
        if self.system not in _DEFAULT_INITIAL:
            raise ConfigError(f"unknown system {self.system!r}")
        if not self.h > 0:
            raise ConfigError("h must be positive")
        if self.t_final < self.h:
            raise ConfigError("t_final must be at least h")
        if not self.methods:
            raise ConfigError("methods list must not be empty")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; choose from {METHODS}")
        defaults = _DEFAULT_INITIAL[self.system]
        if self.q0 is None:
            self.q0 = np.array(defaults["q0"], dtype=float)
        else:
            self.q0 = np.atleast_1d(np.asarray(self.q0, dtype=float))
        if self.q1 is not None:
            self.q1 = np.atleast_1d(np.asarray(self.q1, dtype=float))
        if self.v0 is None:
            if self.q1 is not None:
                self.v0 = (self.q1 - self.q0) / self.h
            else:
                self.v0 = np.array(defaults["v0"], dtype=float)
        else:
            self.v0 = np.atleast_1d(np.asarray(self.v0, dtype=float))
        if self.S0 is None:
            self.S0 = defaults["S0"]
        self.S0 = float(self.S0)
        if self.init_mode is None:
            self.init_mode = defaults["init_mode"]
        if self.newton_tol is None:
            self.newton_tol = default_newton_tol(self.system, self.h)

    @property
    def n_steps(self):
        return int(round(self.t_final / self.h))


def load_config(path):
    """Read a key = value text file (# comments, comma-separated lists)."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = _parse_value(val)
    return out


def _parse_value(text):
    if "," in text:
        return [_parse_value(part.strip()) for part in text.split(",") if part.strip()]
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


@dataclass
class MethodErrors:
    """Error metrics of one method against the reference."""

    max_pos_err: float
    max_S_err: float
    H_dev: dict
    runtime: float

    @property
    def max_H_dev(self):
        return max(self.H_dev.values())


@dataclass
class ErrorReport:
    system: str
    h: float
    t_final: float
    methods: dict  # name -> MethodErrors

    def __post_init__(self):
        for me in self.methods.values():
            if me.max_pos_err < 0 or me.max_S_err < 0:
                raise ValueError("error metrics must be nonnegative")


def _reference_arrays(entry, cfg, ts):
    """(q, v, S) reference arrays on the grid: exact when available."""
    if entry.exact_solution is not None:
        sol = entry.exact_solution(cfg.q0, cfg.v0, cfg.S0)
        return sol.q(ts)[:, None], sol.v(ts)[:, None], sol.entropy(ts)
    traj = reference_integrate(entry.lagrangian, ThermoState(cfg.q0, cfg.v0, cfg.S0),
                               cfg.t_final, cfg.rtol, cfg.atol, h=cfg.h)
    return traj.qs, traj.vs, traj.Ss


def _run_variational(entry, cfg):
    d = midpoint_discretize(entry.lagrangian, cfg.h)
    if cfg.q1 is not None:
        q0, q1, S0 = cfg.q0, cfg.q1, cfg.S0
    else:
        q0, q1, S0 = initialize(entry, cfg.q0, cfg.v0, cfg.S0, cfg.h, cfg.init_mode)
    path = integrate(d, q0, q1, S0, cfg.n_steps, NewtonConfig(tol=cfg.newton_tol))
    return d, path


def _velocity_estimate(path, v0):
    """Velocity series of a discrete path: (q_k - q_{k-1})/h, v0 at k=0."""
    vs = np.empty_like(path.qs)
    vs[0] = v0
    vs[1:] = np.diff(path.qs, axis=0) / path.h
    return vs


def run_experiment(cfg):
    """Run every configured method and measure errors against the reference.

    Returns an ErrorReport; when ``cfg.out`` is set, one trajectory CSV per
    method plus a summary CSV are written under that directory with
    deterministic bytes.
    """
    entry = get_system(cfg.system, **cfg.params)
    N = cfg.n_steps
    ts = cfg.h * np.arange(N + 1)
    qref, vref, Sref = _reference_arrays(entry, cfg, ts)
    H0 = entry.H(cfg.q0, cfg.v0, cfg.S0)

    report = ErrorReport(system=cfg.system, h=cfg.h, t_final=cfg.t_final, methods={})
    tables = {}
    for method in cfg.methods:
        t0 = time.perf_counter()
        if method == "variational":
            d, path = _run_variational(entry, cfg)
            qs = path.qs
            Ss = path.Ss
            vs = _velocity_estimate(path, cfg.v0)
            hp, hm, hv = hamiltonian_estimates(entry, d, path)
            H_dev = {
                "p_plus": float(np.max(np.abs(hp - H0))),
                "p_minus": float(np.max(np.abs(hm - H0))),
                "velocity": float(np.max(np.abs(hv - H0))),
            }
            Hcols = (np.concatenate([[H0], hp]), np.concatenate([[H0], hm]),
                     np.concatenate([[H0], hv]))
        else:
            state0 = ThermoState(cfg.q0, cfg.v0, cfg.S0)
            if method == "rk2":
                traj = rk2_integrate(entry.lagrangian, state0, cfg.h, N)
            else:
                traj = reference_integrate(entry.lagrangian, state0, cfg.t_final,
                                           cfg.rtol, cfg.atol, h=cfg.h)
            qs, vs, Ss = traj.qs, traj.vs, traj.Ss
            hseries = np.array([entry.H(qs[k], vs[k], Ss[k]) for k in range(N + 1)])
            H_dev = {"velocity": float(np.max(np.abs(hseries - H0)))}
            Hcols = (hseries, hseries, hseries)
        runtime = time.perf_counter() - t0
        report.methods[method] = MethodErrors(
            max_pos_err=float(np.max(np.abs(qs - qref))),
            max_S_err=float(np.max(np.abs(Ss - Sref))),
            H_dev=H_dev,
            runtime=runtime,
        )
        tables[method] = (ts, qs, vs, Ss) + Hcols

    if cfg.out is not None:
        import os

        os.makedirs(cfg.out, exist_ok=True)
        for method, cols in tables.items():
            write_trajectory_csv(os.path.join(cfg.out, f"{cfg.system}_{method}.csv"), *cols)
        write_summary_csv(os.path.join(cfg.out, "summary.csv"), cfg, report)
    return report


def convergence_study(system, h_list, t_final=1000.0, method="variational",
                      params=None, **overrides):
    """Log-log least-squares order of the max position error in h.

    Returns ``(slope, errors)`` with one error per step size.
    """
    h_list = list(h_list)
    if len(h_list) < 2:
        raise ConfigError("convergence study needs at least two step sizes")
    errors = []
    for h in h_list:
        cfg = ExperimentConfig(system=system, h=h, t_final=t_final,
                               methods=(method,), params=params or {}, **overrides)
        rep = run_experiment(cfg)
        errors.append(rep.methods[method].max_pos_err)
    slope = np.polyfit(np.log(h_list), np.log(errors), 1)[0]
    return float(slope), errors


# ---------------------------------------------------------------------------
# CSV output


def _fmt(x):
    return format(float(x), ".17g")


def write_trajectory_csv(path, ts, qs, vs, Ss, Hp, Hm, Hv):
    """Trajectory CSV: t, q_1..q_n, v_1..v_n, S, H_plus, H_minus, H_vel."""
    qs = np.atleast_2d(qs)
    vs = np.atleast_2d(vs)
    n = qs.shape[1]
    header = (["t"] + [f"q_{i+1}" for i in range(n)] + [f"v_{i+1}" for i in range(n)]
              + ["S", "H_plus", "H_minus", "H_vel"])
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(len(ts)):
            row = ([_fmt(ts[k])] + [_fmt(x) for x in qs[k]] + [_fmt(x) for x in vs[k]]
                   + [_fmt(Ss[k]), _fmt(Hp[k]), _fmt(Hm[k]), _fmt(Hv[k])])
            fh.write(",".join(row) + "\n")


def write_summary_csv(path, cfg, report):
    """Summary CSV: system,method,h,max_pos_err,max_S_err,max_H_dev."""
    with open(path, "w", newline="\n") as fh:
        fh.write("system,method,h,max_pos_err,max_S_err,max_H_dev\n")
        for method in cfg.methods:
            me = report.methods[method]
            primary = me.H_dev.get("p_plus", me.H_dev["velocity"])
            fh.write(",".join([cfg.system, method, _fmt(cfg.h), _fmt(me.max_pos_err),
                               _fmt(me.max_S_err), _fmt(primary)]) + "\n")
