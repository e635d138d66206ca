"""Continuous Lagrangian thermodynamic systems.

State space is (q, v, S) with q, v in R^n and a single entropy variable S.
A system is described by a Lagrangian L(q, v, S), its analytic first
partials, a friction covector field and an optional external force.  The
equations of motion couple the forced Euler-Lagrange equations with the
entropy equation (dL/dS) * Sdot = v . Ffr.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import TemperatureDegenerateError

__all__ = [
    "ThermoState",
    "LagrangianThermoSystem",
    "Trajectory",
    "energy",
    "temperature",
    "legendre",
    "continuous_rhs",
    "noether_lift_check",
    "conserved_along",
    "fd_gradient",
]

#: central-difference step scale for derivative fallbacks
FD_STEP = float(np.cbrt(np.finfo(float).eps))


def _zero_force(q, v, S):
    return np.zeros_like(q)


@dataclass(frozen=True)
class ThermoState:
    """A point (q, v, S) of the velocity-entropy phase space."""

    q: np.ndarray
    v: np.ndarray
    S: float

    def __post_init__(self):
        q = np.atleast_1d(np.asarray(self.q, dtype=float))
        v = np.atleast_1d(np.asarray(self.v, dtype=float))
        if q.shape != v.shape:
            raise ValueError("q and v must have the same shape")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "S", float(self.S))

    @property
    def n(self):
        return self.q.shape[0]


@dataclass
class LagrangianThermoSystem:
    """Lagrangian L with analytic partials and force covector fields.

    All callables take raw ``(q, v, S)`` arguments (q, v arrays of length
    n, S scalar).  Second derivatives are optional; when absent the
    operations that need them fall back to central finite differences
    with step ``FD_STEP * (1 + |x|)``.

    ``accel`` may supply a closed-form acceleration; ``continuous_rhs``
    then uses it instead of solving the velocity Hessian.
    """

    n: int
    L: callable
    dLdq: callable
    dLdv: callable
    dLdS: callable
    Ffr: callable = _zero_force
    Fext: callable = _zero_force
    name: str = ""
    params: dict = field(default_factory=dict)

    # optional second derivatives of L
    d2Ldq2: callable = None          # (n, n), d2L/dq_i dq_j
    d2Ldqdv: callable = None         # (n, n), [i, j] = d2L/dq_i dv_j
    d2Ldv2: callable = None          # (n, n)
    d2LdqdS: callable = None         # (n,)
    d2LdvdS: callable = None         # (n,)
    d2LdS2: callable = None          # scalar

    # optional Jacobians of the friction covector
    dFfrdq: callable = None          # (n, n), [i, j] = dFfr_i/dq_j
    dFfrdv: callable = None          # (n, n)
    dFfrdS: callable = None          # (n,)

    accel: callable = None           # closed-form (n,) acceleration
    domain_check: callable = None    # raises DomainError outside the domain

    def check_domain(self, q):
        if self.domain_check is not None:
            self.domain_check(q)


@dataclass
class Trajectory:
    """Uniform-step trajectory; states stored as flat arrays."""

    h: float
    times: np.ndarray
    qs: np.ndarray   # (N+1, n)
    vs: np.ndarray   # (N+1, n)
    Ss: np.ndarray   # (N+1,)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.qs = np.atleast_2d(np.asarray(self.qs, dtype=float))
        self.vs = np.atleast_2d(np.asarray(self.vs, dtype=float))
        self.Ss = np.asarray(self.Ss, dtype=float)
        m = len(self.times)
        if not (len(self.qs) == len(self.vs) == len(self.Ss) == m):
            raise ValueError("times/states length mismatch")
        if m > 1 and np.max(np.abs(np.diff(self.times) - self.h)) > 1e-9 * max(1.0, self.h):
            raise ValueError("times not uniformly spaced with step h")

    def __len__(self):
        return len(self.times)

    def state(self, k):
        return ThermoState(self.qs[k], self.vs[k], self.Ss[k])

    @property
    def states(self):
        return [self.state(k) for k in range(len(self))]


def energy(sys, state):
    """Lagrangian energy E_L = v . dL/dv - L."""
    q, v, S = state.q, state.v, state.S
    return float(v @ sys.dLdv(q, v, S) - sys.L(q, v, S))


def temperature(sys, state):
    """Temperature T = -dL/dS (positive on the physical domain)."""
    return -float(sys.dLdS(state.q, state.v, state.S))


def legendre(sys, state):
    """Legendre transform (q, v, S) -> (q, p, S) with p = dL/dv."""
    p = np.asarray(sys.dLdv(state.q, state.v, state.S), dtype=float)
    return state.q.copy(), p, state.S


def fd_gradient(f, x, step=None):
    """Central-difference gradient of a scalar/vector function of x (1d)."""
    x = np.asarray(x, dtype=float)
    step = FD_STEP if step is None else step
    cols = []
    for j in range(x.shape[0]):
        d = step * (1.0 + abs(x[j]))
        xp = x.copy()
        xm = x.copy()
        xp[j] += d
        xm[j] -= d
        cols.append((np.asarray(f(xp)) - np.asarray(f(xm))) / (2 * d))
    return np.stack(cols, axis=-1)


def _velocity_hessian(sys, q, v, S):
    if sys.d2Ldv2 is not None:
        return np.asarray(sys.d2Ldv2(q, v, S), dtype=float)
    return fd_gradient(lambda vv: sys.dLdv(q, vv, S), v)


def _dLdv_q_jacobian(sys, q, v, S):
    # [i, j] = d2L / dv_i dq_j
    if sys.d2Ldqdv is not None:
        return np.asarray(sys.d2Ldqdv(q, v, S), dtype=float).T
    return fd_gradient(lambda qq: sys.dLdv(qq, v, S), q)


def _dLdv_S_derivative(sys, q, v, S):
    if sys.d2LdvdS is not None:
        return np.asarray(sys.d2LdvdS(q, v, S), dtype=float)
    d = FD_STEP * (1.0 + abs(S))
    return (np.asarray(sys.dLdv(q, v, S + d)) - np.asarray(sys.dLdv(q, v, S - d))) / (2 * d)


def continuous_rhs(sys, state):
    """Right-hand side (qdot, vdot, Sdot) of the equations of motion.

    Sdot solves the entropy equation; vdot either comes from the system's
    closed-form acceleration or from solving the velocity Hessian in

        d/dt (dL/dv) = dL/dq + Ffr + Fext.
    """
    q, v, S = state.q, state.v, state.S
    sys.check_domain(q)
    dLdS = float(sys.dLdS(q, v, S))
    if dLdS == 0.0:
        raise TemperatureDegenerateError("dL/dS vanishes: entropy equation singular")
    ffr = np.asarray(sys.Ffr(q, v, S), dtype=float)
    Sdot = float(v @ ffr) / dLdS
    if sys.accel is not None:
        vdot = np.asarray(sys.accel(q, v, S), dtype=float)
    else:
        rhs = (np.asarray(sys.dLdq(q, v, S), dtype=float) + ffr
               + np.asarray(sys.Fext(q, v, S), dtype=float)
               - _dLdv_q_jacobian(sys, q, v, S) @ v
               - _dLdv_S_derivative(sys, q, v, S) * Sdot)
        W = _velocity_hessian(sys, q, v, S)
        vdot = np.linalg.solve(W, rhs)
    return v.copy(), vdot, Sdot


def noether_lift_check(sys, X, X_jac, states, tol=1e-10):
    """Check the lifted-symmetry condition X^C(L) = -(Ffr + Fext)(X^C).

    ``X`` maps q to the field value, ``X_jac`` to its Jacobian
    [i, j] = dX_i/dq_j.  Returns True when the condition holds at every
    sample state, in which case X^V(L) = dL/dv . X(q) is conserved.
    """
    for st in states:
        q, v, S = st.q, st.v, st.S
        xc = (np.asarray(X(q)) @ sys.dLdq(q, v, S)
              + (np.asarray(X_jac(q)) @ v) @ sys.dLdv(q, v, S))
        forces = (np.asarray(sys.Ffr(q, v, S)) + np.asarray(sys.Fext(q, v, S))) @ np.asarray(X(q))
        if abs(xc + forces) > tol:
            return False
    return True


def conserved_along(traj, g):
    """Maximum drift of g (function of ThermoState) along a trajectory."""
    g0 = g(traj.state(0))
    return max(abs(g(traj.state(k)) - g0) for k in range(len(traj)))
