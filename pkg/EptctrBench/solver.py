"""
Eptctr: explicit pseudo-transient continuation with trust-region time-step updating.

Each iteration takes the damped step s = dt/(1+dt) * s_N along the Newton-like direction
s_N = -H g, accepts or rejects it from the ratio of actual to model reduction, and
grows or shrinks the time-step dt the way a trust-region method handles its radius.
"""

from dataclasses import dataclass
import logging
import time
from typing import Optional

import numpy as np
from scipy import linalg as sla

from .linalg import cholesky_with_shift, DEFAULT_FD_EPS
from .preconditioner import (
    CurvaturePair, PreconditionerState, apply_lbfgs_inverse, update_and_select, DEFAULT_THETA,
)
from .problems import CountingOracle
from .schema import (
    DegenerateModel, Mode, NonFiniteEvaluation, SingularSystem, SolveReport, Status, TraceRecord,
)

logger = logging.getLogger(__name__)

# relative change of f below which f_old - f_new is mostly rounding error
ROUNDOFF_BAND = 1e6 * np.finfo(float).eps


@dataclass(frozen=True)
class SolverConfig:
    eta_a: float = 1e-6
    eta1: float = 0.25
    eta2: float = 0.75
    gamma1: float = 2.0
    gamma2: float = 0.5
    theta: float = DEFAULT_THETA
    dt0: float = 1e-2
    dt_min: float = 1e-14
    grad_tol: float = 1e-6
    max_iter: Optional[int] = None
    fd_eps: float = DEFAULT_FD_EPS
    record_trace: bool = False

    def __post_init__(self):
        if not 0 < self.eta_a < self.eta1 < self.eta2 < 1:
            raise ValueError(f"need 0 < eta_a < eta1 < eta2 < 1, got {self.eta_a}, {self.eta1}, {self.eta2}")
        if not self.gamma2 < 1 < self.gamma1:
            raise ValueError(f"need gamma2 < 1 < gamma1, got {self.gamma2}, {self.gamma1}")
        if self.gamma2 <= 0:
            raise ValueError(f"gamma2 must be positive, got {self.gamma2}")
        if self.dt0 <= 0:
            raise ValueError(f"dt0 must be positive, got {self.dt0}")
        if not 0 < self.dt_min < self.dt0:
            raise ValueError(f"need 0 < dt_min < dt0, got {self.dt_min}, {self.dt0}")
        if self.grad_tol <= 0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol}")
        if self.theta < 0:
            raise ValueError(f"theta must be nonnegative, got {self.theta}")
        if self.fd_eps <= 0:
            raise ValueError(f"fd_eps must be positive, got {self.fd_eps}")
        if self.max_iter is not None and self.max_iter < 0:
            raise ValueError(f"max_iter must be nonnegative, got {self.max_iter}")

    def iteration_cap(self, n):
        return 10 * n + 1000 if self.max_iter is None else self.max_iter


@dataclass
class IterateState:
    x: np.ndarray
    f_val: float
    g: np.ndarray
    s_newton: np.ndarray
    dt: float
    precond: PreconditionerState
    trial_success: bool = True


def continuation_step(s_newton, dt):
    return (dt / (1.0 + dt)) * s_newton


def model_reduction(g, s, dt):
    """m(0) - m(s) for the simplified quadratic model along the continuation step."""
    return -((1.0 + 0.5 * dt) / (1.0 + dt)) * float(g @ s)


def acceptance_ratio(f_old, f_new, reduction, actual=None):
    """(f_old - f_new) / reduction; `actual` stands in for the f difference when given."""
    if reduction == 0.0:
        raise DegenerateModel("model predicts no reduction")
    if actual is None:
        actual = f_old - f_new
    return actual / reduction


def in_roundoff_band(f_old, f_new):
    return np.isfinite(f_new) and abs(f_old - f_new) <= ROUNDOFF_BAND * abs(f_old)


def gradient_reduction(g_old, g_new, s):
    """f(x) - f(x + s) by the trapezoidal rule along s, free of cancellation in f."""
    return -0.5 * float((g_old + g_new) @ s)


def update_dt(dt, rho, cfg):
    miss = abs(1.0 - rho)
    if miss <= cfg.eta1:
        return cfg.gamma1 * dt
    if miss < cfg.eta2:
        return dt
    return cfg.gamma2 * dt


class _HessianCache:
    """Hessian at the most recent point asked for; rejected steps reuse it."""

    def __init__(self, oracle, eps):
        self.oracle = oracle
        self.eps = eps
        self.point = None
        self.value = None

    def __call__(self, x):
        if self.point is None or not np.array_equal(self.point, x):
            self.value = self.oracle.hessian(x, self.eps)
            self.point = x.copy()
        return self.value


def newton_direction(precond, g):
    """s_N = -H g from the active branch; returns (s_N, diagonal shift used)."""
    if precond.mode == Mode.LBFGS:
        return -apply_lbfgs_inverse(precond.pair, g), 0.0
    factor, tau = cholesky_with_shift(precond.hessian_cache)
    return -sla.cho_solve(factor, g, check_finite=False), tau


def take_step(state, oracle, cfg, hessian_at, first=False):
    """One Eptctr iteration, updating `state` in place.

    Returns (rho, mode of the direction used, whether a diagonal shift was needed).
    A rejected trial leaves x, f, g and s_N untouched and keeps the old curvature pair.
    When f_old - f_trial is lost in rounding, the trial gradient is evaluated early and
    the actual reduction is taken from gradient_reduction instead.
    """
    mode = state.precond.mode
    shifted = False
    if state.trial_success and not first:
        state.s_newton, tau = newton_direction(state.precond, state.g)
        shifted = tau > 0

    dt = state.dt
    s = continuation_step(state.s_newton, dt)
    x_trial = state.x + s
    f_trial = oracle.eval_f_or_inf(x_trial)
    g_new = actual = None
    if in_roundoff_band(state.f_val, f_trial):
        g_new = oracle.eval_g(x_trial)
        actual = gradient_reduction(state.g, g_new, s)
    try:
        rho = acceptance_ratio(state.f_val, f_trial, model_reduction(state.g, s, dt), actual)
    except DegenerateModel:
        rho = 0.0
    if not np.isfinite(rho):
        rho = -np.inf

    if rho <= cfg.eta_a:
        state.trial_success = False
        pair = state.precond.pair
    else:
        if g_new is None:
            g_new = oracle.eval_g(x_trial)
        pair = CurvaturePair(x_trial - state.x, g_new - state.g)
        state.x, state.f_val, state.g = x_trial, f_trial, g_new
        state.trial_success = True

    rho_bad = abs(1.0 - rho) >= cfg.eta2
    state.dt = update_dt(dt, rho, cfg)
    state.precond = update_and_select(state.precond, pair, rho_bad, oracle, state.x,
                                      cfg.fd_eps, hessian=hessian_at)
    return rho, mode, shifted


def eptctr_solve(problem, x0=None, cfg=None, deadline=None):
    """Minimize problem.eval_f from x0; `deadline` is a time.monotonic() value."""
    cfg = SolverConfig() if cfg is None else cfg
    x0 = problem.default_x0 if x0 is None else x0
    start = time.perf_counter()
    oracle = CountingOracle(problem)
    hessian_at = _HessianCache(oracle, cfg.fd_eps)
    x = np.array(x0, dtype=float)
    cap = cfg.iteration_cap(x.size)
    trace = [] if cfg.record_trace else None
    k = rejected = shifts = 0
    f_val, g = np.nan, np.full(x.size, np.nan)
    state = None

    try:
        if not np.all(np.isfinite(x)):
            raise NonFiniteEvaluation("starting point is not finite")
        f_val = oracle.eval_f(x)
        g = oracle.eval_g(x)
        precond = PreconditionerState.initial(x.size, hessian_at(x), cfg.theta)
        s_newton, tau = newton_direction(precond, g)
        shifts += tau > 0
        state = IterateState(x=x, f_val=f_val, g=g, s_newton=s_newton, dt=cfg.dt0, precond=precond)

        while np.max(np.abs(state.g)) > cfg.grad_tol:
            if k >= cap:
                status = Status.MAX_ITERATIONS
                break
            if deadline is not None and time.monotonic() > deadline:
                status = Status.TIMEOUT
                break
            if state.dt < cfg.dt_min:
                logger.warning("%s: time-step %.3e fell below %.1e at k=%d", problem.name, state.dt, cfg.dt_min, k)
                status = Status.STAGNATION
                break

            dt = state.dt
            rho, mode, shifted = take_step(state, oracle, cfg, hessian_at, first=(k == 0))
            shifts += shifted
            rejected += not state.trial_success
            g_inf = float(np.max(np.abs(state.g)))
            logger.debug("%s k=%d f=%.6e |g|=%.3e dt=%.3e rho=%.4f %s %s", problem.name, k, state.f_val,
                         g_inf, dt, rho, "accept" if state.trial_success else "reject", mode.value)
            if trace is not None:
                trace.append(TraceRecord(k=k, f=state.f_val, g_inf=g_inf, dt=dt, rho=float(rho),
                                         accepted=state.trial_success, mode=mode.value))
            k += 1
        else:
            status = Status.CONVERGED
        x, f_val, g = state.x, state.f_val, state.g
    except SingularSystem as e:
        logger.warning("%s: %s", problem.name, e)
        status = Status.LINEAR_ALGEBRA_FAILURE
        if state is not None:
            x, f_val, g = state.x, state.f_val, state.g
    except NonFiniteEvaluation as e:
        logger.warning("%s: %s", problem.name, e)
        status = Status.NON_FINITE_EVALUATION
        if state is not None:
            x, f_val, g = state.x, state.f_val, state.g

    return SolveReport(
        method="eptctr", status=status, x_final=x.copy(), f_final=float(f_val),
        g_inf_norm=float(np.max(np.abs(g))), iterations=k,
        f_evals=oracle.f_evals, g_evals=oracle.g_evals, hessian_evals=oracle.hessian_evals,
        rejected_steps=rejected, wall_time_s=time.perf_counter() - start,
        regularized_solves=int(shifts), trace=trace,
    )
