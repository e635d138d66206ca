"""Discrete variational machinery for thermodynamic systems.

A discrete system lives on triples (q0, q1, S0) in R^n x R^n x R.  It is
described by a discrete Lagrangian Ld(q0, q1, S0), its slot derivatives
D1Ld, D2Ld (covectors) and DSLd (scalar), and a pair of discrete friction
covectors ffr_minus/ffr_plus.  On a vector space with linear coordinates
both friction covectors share one value; `midpoint_discretize` builds them
that way from a continuous system.

Matrix/index conventions used for all second partials:

    (DaDbLd)[i, j] = d(DbLd)_i / d(q_a)_j      (a, b in {1, 2}; S analogous)
    (Daffr)[i, j]  = d(ffr)_i  / d(q_a)_j

so D1D2Ld is the transpose of D2D1Ld for a smooth Ld.  Every second
partial is optional; consumers fall back to central finite differences
with step ``cbrt(eps) * (1 + |x|)``.
"""

from dataclasses import dataclass

import numpy as np

from .continuous import FD_STEP
from .errors import TemperatureDegenerateError

__all__ = [
    "DiscreteThermoSystem",
    "DiscreteTriple",
    "DiscretePath",
    "midpoint_discretize",
    "entropy_update",
    "del_residual",
    "ddel_map",
    "legendre_plus",
    "legendre_minus",
    "discrete_momenta",
    "discrete_flow",
    "omega_matrices",
    "omega_embedded",
    "pullback_check",
    "momentum_map",
    "noether_condition",
    "discrete_action",
    "boundary_forms",
    "semiregularity_matrix",
]


@dataclass(frozen=True)
class DiscreteTriple:
    """A point (q0, q1, S0) of the discrete state space."""

    q0: np.ndarray
    q1: np.ndarray
    S0: float

    def __post_init__(self):
        q0 = np.atleast_1d(np.asarray(self.q0, dtype=float))
        q1 = np.atleast_1d(np.asarray(self.q1, dtype=float))
        if q0.shape != q1.shape:
            raise ValueError("q0 and q1 must have the same shape")
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "S0", float(self.S0))

    def as_array(self):
        return np.concatenate([self.q0, self.q1, [self.S0]])

    @classmethod
    def from_array(cls, x, n):
        return cls(x[:n], x[n : 2 * n], x[2 * n])


@dataclass
class DiscreteThermoSystem:
    """Discrete Lagrangian, friction covectors and optional second partials.

    All callables take ``(q0, q1, S0)``.
    """

    n: int
    h: float
    Ld: callable
    D1Ld: callable
    D2Ld: callable
    DSLd: callable
    ffr_minus: callable
    ffr_plus: callable

    # second partials of Ld, optional
    D1D1Ld: callable = None
    D2D1Ld: callable = None
    D1D2Ld: callable = None
    D2D2Ld: callable = None
    DSD1Ld: callable = None
    DSD2Ld: callable = None
    DSDSLd: callable = None

    # Jacobians of the friction covectors, optional
    D1ffr_minus: callable = None
    D2ffr_minus: callable = None
    D1ffr_plus: callable = None
    D2ffr_plus: callable = None
    DSffr_minus: callable = None
    DSffr_plus: callable = None

    # fused Legendre-covector callables, optional; algebraically equal to
    # the combinations they name but evaluated in one pass (hot loops)
    pi_minus: callable = None           # -D1Ld - ffr_minus/2
    pi_plus: callable = None            # D2Ld + ffr_plus/2
    pi_minus_dq1: callable = None       # d(pi_minus)/dq1, the semiregularity matrix
    entropy_increment: callable = None  # S1 - S0 on a triple

    name: str = ""


@dataclass
class DiscretePath:
    """Discrete path (q_k, S_k), k = 0..N, at a fixed step h.

    Membership in the thermodynamic path space (the entropy-update
    constraint at every k) is checked by `constraint_residual`; paths
    produced by the integrator satisfy it by construction.
    """

    h: float
    qs: np.ndarray   # (N+1, n)
    Ss: np.ndarray   # (N+1,)

    def __post_init__(self):
        self.qs = np.atleast_2d(np.asarray(self.qs, dtype=float))
        self.Ss = np.asarray(self.Ss, dtype=float)
        if len(self.qs) != len(self.Ss):
            raise ValueError("qs and Ss must have equal length")

    def __len__(self):
        return len(self.qs)

    @property
    def n_steps(self):
        return len(self.qs) - 1

    def triple(self, k):
        """The k-th solver triple (q_{k-1}, q_k, S_{k-1}), 1 <= k <= N."""
        if not 1 <= k <= self.n_steps:
            raise IndexError(f"triple index {k} out of range")
        return DiscreteTriple(self.qs[k - 1], self.qs[k], self.Ss[k - 1])

    def triples(self):
        for k in range(1, self.n_steps + 1):
            yield self.triple(k)

    def constraint_residual(self, d):
        """Max relative violation of the entropy-update constraint."""
        worst = 0.0
        for k in range(1, len(self)):
            s_pred = entropy_update(d, self.triple(k))
            err = abs(self.Ss[k] - s_pred) / max(1.0, abs(self.Ss[k]))
            worst = max(worst, err)
        return worst


# ---------------------------------------------------------------------------
# finite-difference fallbacks for missing second partials


def _fd_jac(fn, q0, q1, S0, slot):
    """Jacobian [i, j] = d fn_i / d (q_slot)_j by central differences."""
    base = [np.array(q0, dtype=float), np.array(q1, dtype=float)]
    x = base[slot]
    cols = []
    for j in range(x.shape[0]):
        dlt = FD_STEP * (1.0 + abs(x[j]))
        x[j] += dlt
        up = np.asarray(fn(base[0], base[1], S0), dtype=float)
        x[j] -= 2 * dlt
        dn = np.asarray(fn(base[0], base[1], S0), dtype=float)
        x[j] += dlt
        cols.append((up - dn) / (2 * dlt))
    return np.stack(cols, axis=-1)


def _fd_dS(fn, q0, q1, S0):
    dlt = FD_STEP * (1.0 + abs(S0))
    up = np.asarray(fn(q0, q1, S0 + dlt), dtype=float)
    dn = np.asarray(fn(q0, q1, S0 - dlt), dtype=float)
    return (up - dn) / (2 * dlt)


def _second(d, attr, fn, q0, q1, S0, slot=None):
    cal = getattr(d, attr)
    if cal is not None:
        return np.asarray(cal(q0, q1, S0), dtype=float)
    if slot is None:
        return _fd_dS(fn, q0, q1, S0)
    return _fd_jac(fn, q0, q1, S0, slot)


# ---------------------------------------------------------------------------
# midpoint discretization of a continuous system


def midpoint_discretize(sys, h):
    """Discretize a Lagrangian system by the midpoint substitutions.

    q -> (q0 + q1)/2 and v -> (q1 - q0)/h in L and in the friction
    covector; the single friction value acts on dq0 as ffr_minus and on
    dq1 as ffr_plus.  All discrete partials are assembled by the chain
    rule from the system's analytic partials (second partials only where
    the system supplies them).
    """
    if h <= 0:
        raise ValueError(f"time step must be positive, got {h}")
    n = sys.n

    def mid(q0, q1):
        return 0.5 * (q0 + q1), (q1 - q0) / h

    def Ld(q0, q1, S0):
        m, w = mid(q0, q1)
        sys.check_domain(m)
        return sys.L(m, w, S0)

    def D1Ld(q0, q1, S0):
        m, w = mid(q0, q1)
        sys.check_domain(m)
        return 0.5 * np.asarray(sys.dLdq(m, w, S0)) - np.asarray(sys.dLdv(m, w, S0)) / h

    def D2Ld(q0, q1, S0):
        m, w = mid(q0, q1)
        sys.check_domain(m)
        return 0.5 * np.asarray(sys.dLdq(m, w, S0)) + np.asarray(sys.dLdv(m, w, S0)) / h

    def DSLd(q0, q1, S0):
        m, w = mid(q0, q1)
        return float(sys.dLdS(m, w, S0))

    def ffr(q0, q1, S0):
        m, w = mid(q0, q1)
        return np.asarray(sys.Ffr(m, w, S0), dtype=float)

    kw = {}
    if sys.d2Ldq2 is not None and sys.d2Ldv2 is not None:
        # d2L/dqdv defaults to zero when not supplied (true for all the
        # shipped systems, whose kinetic term is |v|^2/2)
        def lqv(m, w, S0):
            if sys.d2Ldqdv is None:
                return np.zeros((n, n))
            return np.asarray(sys.d2Ldqdv(m, w, S0), dtype=float)

        def make_ldd(cq0, cv0, cq1, cv1):
            # d/dq0 ~ (cq0/2, cv0/h), d/dq1 ~ (cq1/2, cv1/h) on (m, w)
            def jac(q0, q1, S0):
                m, w = mid(q0, q1)
                qq = np.asarray(sys.d2Ldq2(m, w, S0), dtype=float)
                vv = np.asarray(sys.d2Ldv2(m, w, S0), dtype=float)
                qv = lqv(m, w, S0)
                return (0.25 * cq0 * cq1 * qq
                        + (cq0 * cv1 / (2 * h)) * qv
                        + (cq1 * cv0 / (2 * h)) * qv.T
                        + (cv0 * cv1 / (h * h)) * vv)
            return jac

        kw["D1D1Ld"] = make_ldd(1, -1, 1, -1)
        kw["D2D1Ld"] = make_ldd(1, -1, 1, 1)
        kw["D1D2Ld"] = make_ldd(1, 1, 1, -1)
        kw["D2D2Ld"] = make_ldd(1, 1, 1, 1)

    if sys.d2LdqdS is not None and sys.d2LdvdS is not None:
        def make_lsd(cv):
            def vec(q0, q1, S0):
                m, w = mid(q0, q1)
                return (0.5 * np.asarray(sys.d2LdqdS(m, w, S0), dtype=float)
                        + (cv / h) * np.asarray(sys.d2LdvdS(m, w, S0), dtype=float))
            return vec

        kw["DSD1Ld"] = make_lsd(-1)
        kw["DSD2Ld"] = make_lsd(1)

    if sys.d2LdS2 is not None:
        def dsds(q0, q1, S0):
            m, w = mid(q0, q1)
            return float(sys.d2LdS2(m, w, S0))
        kw["DSDSLd"] = dsds

    if sys.dFfrdq is not None and sys.dFfrdv is not None:
        def make_fd(cv):
            def jac(q0, q1, S0):
                m, w = mid(q0, q1)
                return (0.5 * np.asarray(sys.dFfrdq(m, w, S0), dtype=float)
                        + (cv / h) * np.asarray(sys.dFfrdv(m, w, S0), dtype=float))
            return jac

        kw["D1ffr_minus"] = kw["D1ffr_plus"] = make_fd(-1)
        kw["D2ffr_minus"] = kw["D2ffr_plus"] = make_fd(1)

    if sys.dFfrdS is not None:
        def fds(q0, q1, S0):
            m, w = mid(q0, q1)
            return np.asarray(sys.dFfrdS(m, w, S0), dtype=float)
        kw["DSffr_minus"] = kw["DSffr_plus"] = fds

    # fused covectors of the two Legendre maps (single midpoint pass)
    def pi_minus(q0, q1, S0):
        m, w = mid(q0, q1)
        sys.check_domain(m)
        return (np.asarray(sys.dLdv(m, w, S0)) / h
                - 0.5 * np.asarray(sys.dLdq(m, w, S0))
                - 0.5 * np.asarray(sys.Ffr(m, w, S0)))

    def pi_plus(q0, q1, S0):
        m, w = mid(q0, q1)
        sys.check_domain(m)
        return (np.asarray(sys.dLdv(m, w, S0)) / h
                + 0.5 * np.asarray(sys.dLdq(m, w, S0))
                + 0.5 * np.asarray(sys.Ffr(m, w, S0)))

    def entropy_increment(q0, q1, S0):
        m, w = mid(q0, q1)
        return float(np.asarray(sys.Ffr(m, w, S0)) @ (q1 - q0)) / float(sys.dLdS(m, w, S0))

    kw["pi_minus"] = pi_minus
    kw["pi_plus"] = pi_plus
    kw["entropy_increment"] = entropy_increment

    if sys.d2Ldq2 is not None and sys.d2Ldv2 is not None and sys.dFfrdq is not None \
            and sys.dFfrdv is not None:
        def pi_minus_dq1(q0, q1, S0):
            m, w = mid(q0, q1)
            qq = np.asarray(sys.d2Ldq2(m, w, S0), dtype=float)
            vv = np.asarray(sys.d2Ldv2(m, w, S0), dtype=float)
            qv = (np.zeros((n, n)) if sys.d2Ldqdv is None
                  else np.asarray(sys.d2Ldqdv(m, w, S0), dtype=float))
            fq = np.asarray(sys.dFfrdq(m, w, S0), dtype=float)
            fv = np.asarray(sys.dFfrdv(m, w, S0), dtype=float)
            return (vv / (h * h) - 0.25 * qq - (0.5 / h) * qv + (0.5 / h) * qv.T
                    - 0.25 * fq - (0.5 / h) * fv)

        kw["pi_minus_dq1"] = pi_minus_dq1

    return DiscreteThermoSystem(
        n=n, h=h, Ld=Ld, D1Ld=D1Ld, D2Ld=D2Ld, DSLd=DSLd,
        ffr_minus=ffr, ffr_plus=ffr, name=sys.name, **kw,
    )


# ---------------------------------------------------------------------------
# core one-step objects


def _checked_DSLd(d, q0, q1, S0):
    val = float(d.DSLd(q0, q1, S0))
    if val == 0.0:
        raise TemperatureDegenerateError("D_S Ld vanishes: entropy update singular")
    return val


def entropy_update(d, t):
    """Entropy after one step: the phenomenological-constraint update.

        S1 = S0 + (ffr_plus . q1 - ffr_minus . q0) / DSLd

    evaluated on the triple.  When the two covectors are one shared value
    f the numerator is computed as f . (q1 - q0), which is the exact same
    quantity without large-coordinate cancellation.
    """
    q0, q1, S0 = t.q0, t.q1, t.S0
    if d.entropy_increment is not None:
        try:
            return S0 + d.entropy_increment(q0, q1, S0)
        except ZeroDivisionError:
            raise TemperatureDegenerateError(
                "D_S Ld vanishes: entropy update singular") from None
    dsl = _checked_DSLd(d, q0, q1, S0)
    if d.ffr_minus is d.ffr_plus:
        num = float(d.ffr_plus(q0, q1, S0) @ (q1 - q0))
    else:
        num = float(d.ffr_plus(q0, q1, S0) @ q1 - d.ffr_minus(q0, q1, S0) @ q0)
    return S0 + num / dsl


def del_residual(d, q_prev, q_curr, S_prev, q_next, S_curr):
    """Residual covector of the discrete Euler-Lagrange equations.

    Zero exactly when (q_prev, q_curr, q_next) with entropies
    (S_prev, S_curr) is a solution step.
    """
    q_prev = np.atleast_1d(np.asarray(q_prev, dtype=float))
    q_curr = np.atleast_1d(np.asarray(q_curr, dtype=float))
    q_next = np.atleast_1d(np.asarray(q_next, dtype=float))
    return (np.asarray(d.D1Ld(q_curr, q_next, S_curr), dtype=float)
            + 0.5 * np.asarray(d.ffr_minus(q_curr, q_next, S_curr), dtype=float)
            + np.asarray(d.D2Ld(q_prev, q_curr, S_prev), dtype=float)
            + 0.5 * np.asarray(d.ffr_plus(q_prev, q_curr, S_prev), dtype=float))


def ddel_map(d, q_prev, q_curr, q_next, S_prev, S_curr):
    """The discrete Euler-Lagrange map; same formula as `del_residual`."""
    return del_residual(d, q_prev, q_curr, S_prev, q_next, S_curr)


def legendre_minus(d, t):
    """Minus Legendre transform: (q0, -D1Ld - ffr_minus/2, S0)."""
    q0, q1, S0 = t.q0, t.q1, t.S0
    if d.pi_minus is not None:
        cov = np.asarray(d.pi_minus(q0, q1, S0), dtype=float)
    else:
        cov = -np.asarray(d.D1Ld(q0, q1, S0), dtype=float) - 0.5 * np.asarray(
            d.ffr_minus(q0, q1, S0), dtype=float)
    return q0.copy(), cov, S0


def legendre_plus(d, t):
    """Plus Legendre transform: (q1, D2Ld + ffr_plus/2, entropy update)."""
    q0, q1, S0 = t.q0, t.q1, t.S0
    S1 = entropy_update(d, t)
    if d.pi_plus is not None:
        cov = np.asarray(d.pi_plus(q0, q1, S0), dtype=float)
    else:
        cov = np.asarray(d.D2Ld(q0, q1, S0), dtype=float) + 0.5 * np.asarray(
            d.ffr_plus(q0, q1, S0), dtype=float)
    return q1.copy(), cov, S1


def discrete_momenta(d, t):
    """h-scaled momenta (p_minus, p_plus); these approximate p = dL/dv."""
    q0, q1, S0 = t.q0, t.q1, t.S0
    p_plus = d.h * np.asarray(d.D2Ld(q0, q1, S0), dtype=float) + (d.h / 2) * np.asarray(
        d.ffr_plus(q0, q1, S0), dtype=float)
    p_minus = -d.h * np.asarray(d.D1Ld(q0, q1, S0), dtype=float) - (d.h / 2) * np.asarray(
        d.ffr_minus(q0, q1, S0), dtype=float)
    return p_minus, p_plus


def semiregularity_matrix(d, t):
    """-D2D1Ld - D2ffr_minus/2; invertibility makes the minus transform
    a local diffeomorphism.  Its negative is the Newton Jacobian of
    `del_residual` in q_next."""
    q0, q1, S0 = t.q0, t.q1, t.S0
    if d.pi_minus_dq1 is not None:
        return np.asarray(d.pi_minus_dq1(q0, q1, S0), dtype=float)
    m = _second(d, "D2D1Ld", d.D1Ld, q0, q1, S0, slot=1)
    f = _second(d, "D2ffr_minus", d.ffr_minus, q0, q1, S0, slot=1)
    return -m - 0.5 * f


def discrete_flow(d, t, cfg=None):
    """One step of the discrete Lagrangian flow.

    Maps (q0, q1, S0) to (q1, q2, S1) where S1 is the entropy update and
    q2 is the Newton root of the discrete Euler-Lagrange residual.
    """
    from .solve import NewtonConfig, newton_solve

    cfg = cfg or NewtonConfig()
    q0, q1, S0 = t.q0, t.q1, t.S0
    S1 = entropy_update(d, t)
    const = (np.asarray(d.D2Ld(q0, q1, S0), dtype=float)
             + 0.5 * np.asarray(d.ffr_plus(q0, q1, S0), dtype=float))

    def residual(x):
        return (np.asarray(d.D1Ld(q1, x, S1), dtype=float)
                + 0.5 * np.asarray(d.ffr_minus(q1, x, S1), dtype=float)
                + const)

    def jacobian(x):
        return -semiregularity_matrix(d, DiscreteTriple(q1, x, S1))

    q2, _ = newton_solve(residual, jacobian, 2 * q1 - q0, cfg)
    return DiscreteTriple(q1, q2, S1)


# ---------------------------------------------------------------------------
# two-forms and the pullback theorem


def omega_matrices(d, t):
    """q0/q1 coefficient blocks of the two pulled-back two-forms.

        Wplus  = D1D2Ld + D1ffr_plus / 2
        Wminus = D1D2Ld + D2ffr_minus / 2

    in the index convention of the module docstring.
    """
    q0, q1, S0 = t.q0, t.q1, t.S0
    d1d2 = _second(d, "D1D2Ld", d.D2Ld, q0, q1, S0, slot=0)
    fplus = _second(d, "D1ffr_plus", d.ffr_plus, q0, q1, S0, slot=0)
    fminus = _second(d, "D2ffr_minus", d.ffr_minus, q0, q1, S0, slot=1)
    return d1d2 + 0.5 * fplus, d1d2 + 0.5 * fminus


def omega_embedded(d, t, side):
    """Full (2n+1)-dimensional antisymmetric matrix of omega^{+/-} at t.

    Computed as the exact pullback of the canonical form dq^i ^ dp_i by
    the corresponding discrete Legendre transform, so it carries the
    dq ^ dS block produced by entropy-dependent momenta alongside the
    dq0 ^ dq1 block of `omega_matrices`.
    """
    n = d.n
    q0, q1, S0 = t.q0, t.q1, t.S0
    Aq = np.zeros((n, 2 * n + 1))
    Ap = np.empty((n, 2 * n + 1))
    if side == "plus":
        Aq[:, n : 2 * n] = np.eye(n)
        d1 = _second(d, "D1D2Ld", d.D2Ld, q0, q1, S0, slot=0)
        d2 = _second(d, "D2D2Ld", d.D2Ld, q0, q1, S0, slot=1)
        ds = _second(d, "DSD2Ld", d.D2Ld, q0, q1, S0)
        f1 = _second(d, "D1ffr_plus", d.ffr_plus, q0, q1, S0, slot=0)
        f2 = _second(d, "D2ffr_plus", d.ffr_plus, q0, q1, S0, slot=1)
        fs = _second(d, "DSffr_plus", d.ffr_plus, q0, q1, S0)
        Ap[:, :n] = d1 + 0.5 * f1
        Ap[:, n : 2 * n] = d2 + 0.5 * f2
        Ap[:, 2 * n] = ds + 0.5 * fs
    elif side == "minus":
        Aq[:, :n] = np.eye(n)
        d1 = _second(d, "D1D1Ld", d.D1Ld, q0, q1, S0, slot=0)
        d2 = _second(d, "D2D1Ld", d.D1Ld, q0, q1, S0, slot=1)
        ds = _second(d, "DSD1Ld", d.D1Ld, q0, q1, S0)
        f1 = _second(d, "D1ffr_minus", d.ffr_minus, q0, q1, S0, slot=0)
        f2 = _second(d, "D2ffr_minus", d.ffr_minus, q0, q1, S0, slot=1)
        fs = _second(d, "DSffr_minus", d.ffr_minus, q0, q1, S0)
        Ap[:, :n] = -(d1 + 0.5 * f1)
        Ap[:, n : 2 * n] = -(d2 + 0.5 * f2)
        Ap[:, 2 * n] = -(ds + 0.5 * fs)
    else:
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    return Aq.T @ Ap - Ap.T @ Aq


def _flow_jacobian(d, t, cfg, step=1e-4):
    """Richardson-extrapolated central-difference Jacobian of the flow."""
    n = d.n
    dim = 2 * n + 1
    x0 = t.as_array()

    def flow_vec(x):
        return discrete_flow(d, DiscreteTriple.from_array(x, n), cfg).as_array()

    def central(delta):
        cols = []
        for j in range(dim):
            xp = x0.copy()
            xm = x0.copy()
            xp[j] += delta
            xm[j] -= delta
            cols.append((flow_vec(xp) - flow_vec(xm)) / (2 * delta))
        return np.stack(cols, axis=-1)

    coarse = central(step)
    fine = central(step / 2)
    return (4.0 * fine - coarse) / 3.0


def pullback_check(d, t, cfg=None, fd_step=1e-4):
    """Defect of the flow-pullback identity on the two-forms.

    Returns ``max |J^T W^-(flow(t)) J - W^+(t)|`` with J the
    finite-difference Jacobian of the flow at t; the identity is exact
    for the analytic flow, so the value measures only discretization of
    J (and Newton tolerance).
    """
    from .solve import NewtonConfig

    cfg = cfg or NewtonConfig()
    image = discrete_flow(d, t, cfg)
    J = _flow_jacobian(d, t, cfg, step=fd_step)
    w_minus = omega_embedded(d, image, "minus")
    w_plus = omega_embedded(d, t, "plus")
    return float(np.max(np.abs(J.T @ w_minus @ J - w_plus)))


# ---------------------------------------------------------------------------
# momentum maps and the discrete Noether condition


def momentum_map(d, t, xi, side):
    """Pairing of a discrete momentum with the generator xi (callable q -> R^n)."""
    p_minus, p_plus = discrete_momenta(d, t)
    if side == "plus":
        return float(p_plus @ np.asarray(xi(t.q1), dtype=float))
    if side == "minus":
        return float(p_minus @ np.asarray(xi(t.q0), dtype=float))
    raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")


def noether_condition(d, xi, samples, tol=1e-10):
    """Discrete Noether condition xi(Ld) + f_d(xi) = 0 on sample triples.

    xi acts diagonally on (q0, q1) with zero S-component; the friction
    pairing carries the same 1/2 weights as the variational principle.
    When the condition holds the momentum map is a constant of the
    discrete motion.
    """
    for t in samples:
        q0, q1, S0 = t.q0, t.q1, t.S0
        x0 = np.asarray(xi(q0), dtype=float)
        x1 = np.asarray(xi(q1), dtype=float)
        val = (np.asarray(d.D1Ld(q0, q1, S0)) @ x0
               + np.asarray(d.D2Ld(q0, q1, S0)) @ x1
               + 0.5 * np.asarray(d.ffr_minus(q0, q1, S0)) @ x0
               + 0.5 * np.asarray(d.ffr_plus(q0, q1, S0)) @ x1)
        if abs(val) > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# action and boundary forms


def raw_action(d, path):
    """Sum of Ld over the segments of a path (no membership check)."""
    return float(sum(d.Ld(t.q0, t.q1, t.S0) for t in path.triples()))


def discrete_action(d, path, validate=True, constraint_tol=1e-12):
    """Discrete action of a path of the thermodynamic path space."""
    if validate:
        res = path.constraint_residual(d)
        if res > constraint_tol:
            raise ValueError(
                f"path violates the entropy-update constraint (relative residual {res:.3e})"
            )
    return raw_action(d, path)


def boundary_forms(d, t):
    """Boundary one-form coefficients (theta_minus on dq0, theta_plus on dq1)."""
    q0, q1, S0 = t.q0, t.q1, t.S0
    theta_minus = -(np.asarray(d.D1Ld(q0, q1, S0), dtype=float)
                    + 0.5 * np.asarray(d.ffr_minus(q0, q1, S0), dtype=float))
    theta_plus = (np.asarray(d.D2Ld(q0, q1, S0), dtype=float)
                  + 0.5 * np.asarray(d.ffr_plus(q0, q1, S0), dtype=float))
    return theta_minus, theta_plus
