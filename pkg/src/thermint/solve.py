"""Newton stepping and path integration for the implicit discrete scheme."""

from dataclasses import dataclass

import numpy as np

from .continuous import FD_STEP, ThermoState, continuous_rhs
from .discrete import DiscretePath, DiscreteTriple, entropy_update, semiregularity_matrix
from .errors import ConfigError, ConvergenceError

__all__ = ["NewtonConfig", "StepReport", "newton_solve", "integrate", "initialize"]


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12        # absolute max-norm residual tolerance
    max_iter: int = 50
    fd_step: float = FD_STEP  # relative step of the FD Jacobian fallback

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class StepReport:
    iterations: int
    residual_norm: float
    converged: bool


def _fd_jacobian(residual, x, r0, step):
    cols = []
    for j in range(x.shape[0]):
        d = step * (1.0 + abs(x[j]))
        xp = x.copy()
        xp[j] += d
        cols.append((np.asarray(residual(xp), dtype=float) - r0) / d)
    return np.stack(cols, axis=-1)


def newton_solve(residual, jacobian, x0, cfg=None):
    """Newton iteration for residual(x) = 0 with max-norm convergence.

    ``jacobian`` may be None, in which case a one-sided finite-difference
    Jacobian is built from the residual.  Raises ConvergenceError on a
    singular Jacobian or when max_iter is exhausted.
    """
    cfg = cfg or NewtonConfig()
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    r = np.atleast_1d(np.asarray(residual(x), dtype=float))
    rnorm = float(np.max(np.abs(r)))
    for it in range(cfg.max_iter):
        if rnorm <= cfg.tol:
            return x, StepReport(iterations=it, residual_norm=rnorm, converged=True)
        if jacobian is not None:
            J = np.atleast_2d(np.asarray(jacobian(x), dtype=float))
        else:
            J = _fd_jacobian(residual, x, r, cfg.fd_step)
        try:
            dx = np.linalg.solve(J, r)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"singular Newton Jacobian: {exc}") from exc
        if not np.all(np.isfinite(dx)):
            raise ConvergenceError("non-finite Newton update (singular Jacobian?)")
        x_new = x - dx
        stalled = float(np.max(np.abs(dx))) <= 4.0 * np.finfo(float).eps * (
            1.0 + float(np.max(np.abs(x_new))))
        x = x_new
        r = np.atleast_1d(np.asarray(residual(x), dtype=float))
        rnorm = float(np.max(np.abs(r)))
        if stalled:
            # update at roundoff level: the residual is at its attainable
            # floor, iterating further cannot improve it
            break
    if rnorm <= cfg.tol:
        return x, StepReport(iterations=cfg.max_iter, residual_norm=rnorm, converged=True)
    raise ConvergenceError(
        f"Newton did not reach tol={cfg.tol:.1e} within {cfg.max_iter} iterations "
        f"(residual {rnorm:.3e})"
    )


def integrate(d, q0, q1, S0, N, cfg=None):
    """Iterate the discrete flow N times from initial data (q0, q1, S0).

    Returns a DiscretePath with N+1 points; entropies are always computed
    from the update constraint, never solved for.  Newton is warm-started
    at the linear extrapolation 2 q_k - q_{k-1}; the loop is kept lean
    (no per-step closures) because benchmark cells run 10^6 steps.
    """
    cfg = cfg or NewtonConfig()
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    q1 = np.atleast_1d(np.asarray(q1, dtype=float))
    n = d.n
    qs = np.empty((N + 1, n))
    Ss = np.empty(N + 1)
    qs[0] = q0
    Ss[0] = float(S0)
    if N == 0:
        return DiscretePath(h=d.h, qs=qs, Ss=Ss)
    qs[1] = q1

    # fused Legendre covectors when the discretization supplies them;
    # the residual of the discrete equations is pi_plus(prev) - pi_minus(next)
    if d.pi_minus is not None and d.pi_plus is not None:
        def minus_cov(qa, x, S):
            return -np.asarray(d.pi_minus(qa, x, S), dtype=float)

        def plus_cov(qa, qb, S):
            return np.asarray(d.pi_plus(qa, qb, S), dtype=float)
    else:
        def minus_cov(qa, x, S):
            return (np.asarray(d.D1Ld(qa, x, S), dtype=float)
                    + 0.5 * np.asarray(d.ffr_minus(qa, x, S), dtype=float))

        def plus_cov(qa, qb, S):
            return (np.asarray(d.D2Ld(qa, qb, S), dtype=float)
                    + 0.5 * np.asarray(d.ffr_plus(qa, qb, S), dtype=float))

    def newton_jac(qb, x, Sb):
        return -semiregularity_matrix(d, DiscreteTriple(qb, x, Sb))

    jac = d.pi_minus_dq1
    tol, max_iter = cfg.tol, cfg.max_iter
    eps = np.finfo(float).eps
    scalar = n == 1

    for k in range(1, N):
        qa, qb = qs[k - 1], qs[k]
        Sa = Ss[k - 1]
        Sb = entropy_update(d, DiscreteTriple(qa, qb, Sa))
        Ss[k] = Sb

        const = plus_cov(qa, qb, Sa)
        x = 2 * qb - qa
        r = minus_cov(qb, x, Sb) + const
        rnorm = abs(float(r[0])) if scalar else float(np.max(np.abs(r)))
        converged = rnorm <= tol
        for _ in range(max_iter):
            if converged:
                break
            J = -jac(qb, x, Sb) if jac is not None else newton_jac(qb, x, Sb)
            try:
                if scalar:
                    j00 = float(J[0, 0])
                    if j00 == 0.0:
                        raise np.linalg.LinAlgError("zero Jacobian")
                    dx = r / j00
                else:
                    dx = np.linalg.solve(J, r)
            except np.linalg.LinAlgError as exc:
                raise ConvergenceError(f"step {k}: singular Newton Jacobian",
                                       step_index=k) from exc
            if not np.all(np.isfinite(dx)):
                raise ConvergenceError(f"step {k}: non-finite Newton update",
                                       step_index=k)
            x = x - dx
            dxn = abs(float(dx[0])) if scalar else float(np.max(np.abs(dx)))
            xn = abs(float(x[0])) if scalar else float(np.max(np.abs(x)))
            stalled = dxn <= 4.0 * eps * (1.0 + xn)
            r = minus_cov(qb, x, Sb) + const
            rnorm = abs(float(r[0])) if scalar else float(np.max(np.abs(r)))
            converged = rnorm <= tol
            if stalled:
                break
        if not converged:
            raise ConvergenceError(
                f"step {k}: Newton residual {rnorm:.3e} above tol {tol:.1e}",
                step_index=k,
            )
        qs[k + 1] = x
    Ss[N] = entropy_update(d, DiscreteTriple(qs[N - 1], qs[N], Ss[N - 1]))
    return DiscretePath(h=d.h, qs=qs, Ss=Ss)


def initialize(entry, q0, v0, S0, h, mode="exact"):
    """Produce the first two path points (q0, q1, S0) for a given mode.

    exact      q1 = exact solution at t = h (needs an exact-solution handle);
    reference  q1 from one adaptive reference step at tolerance 1e-10;
    hold       q1 = q0 (the zero-initial-velocity choice for the gases);
    taylor     q1 = q0 + h v0 + (h^2/2) a(q0, v0, S0).
    """
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    v0 = np.atleast_1d(np.asarray(v0, dtype=float))
    S0 = float(S0)
    sys = getattr(entry, "lagrangian", entry)

    if mode == "exact":
        maker = getattr(entry, "exact_solution", None)
        if maker is None:
            raise ConfigError(f"system {sys.name!r} has no exact solution handle")
        q1 = np.atleast_1d(np.asarray(maker(q0, v0, S0).q(h), dtype=float))
    elif mode == "reference":
        from scipy.integrate import solve_ivp

        state = ThermoState(q0, v0, S0)
        n = sys.n

        def fun(t, y):
            qd, vd, Sd = continuous_rhs(sys, ThermoState(y[:n], y[n : 2 * n], y[2 * n]))
            return np.concatenate([qd, vd, [Sd]])

        y0 = np.concatenate([state.q, state.v, [state.S]])
        sol = solve_ivp(fun, (0.0, h), y0, method="RK45", rtol=1e-10, atol=1e-10)
        if not sol.success:
            raise ConvergenceError(f"reference initialization failed: {sol.message}")
        q1 = sol.y[:n, -1]
    elif mode == "hold":
        q1 = q0.copy()
    elif mode == "taylor":
        _, a, _ = continuous_rhs(sys, ThermoState(q0, v0, S0))
        q1 = q0 + h * v0 + 0.5 * h * h * a
    else:
        raise ConfigError(f"unknown initialization mode {mode!r}")
    return q0, q1, S0
