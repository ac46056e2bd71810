"""
Comparison solvers run by the bench next to Eptctr: a dogleg trust-region Newton
method and BFGS with backtracking Armijo line search.

Both share Eptctr's termination test (||g||_inf <= grad_tol), counters and status
mapping, so their rows in a report line up.
"""

from dataclasses import dataclass
import logging
import time
from typing import Optional

import numpy as np
from scipy import linalg as sla

from .linalg import cholesky_with_shift, DEFAULT_FD_EPS
from .problems import CountingOracle
from .schema import NonFiniteEvaluation, SingularSystem, SolveReport, Status, TraceRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaselineConfig:
    grad_tol: float = 1e-6
    max_iter: Optional[int] = None
    tr_radius0: float = 1.0
    tr_radius_max: float = 1e8
    tr_accept: float = 1e-4
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5
    max_backtracks: int = 60
    fd_eps: float = DEFAULT_FD_EPS
    record_trace: bool = False

    def __post_init__(self):
        if self.grad_tol <= 0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol}")
        if not 0 < self.armijo_c < 1:
            raise ValueError(f"armijo_c must lie in (0, 1), got {self.armijo_c}")
        if not 0 < self.backtrack_factor < 1:
            raise ValueError(f"backtrack_factor must lie in (0, 1), got {self.backtrack_factor}")
        if not 0 < self.tr_radius0 <= self.tr_radius_max:
            raise ValueError(f"need 0 < tr_radius0 <= tr_radius_max, got {self.tr_radius0}, {self.tr_radius_max}")
        if not 0 <= self.tr_accept < 0.25:
            raise ValueError(f"tr_accept must lie in [0, 0.25), got {self.tr_accept}")
        if self.max_backtracks < 1:
            raise ValueError(f"max_backtracks must be >= 1, got {self.max_backtracks}")
        if self.fd_eps <= 0:
            raise ValueError(f"fd_eps must be positive, got {self.fd_eps}")
        if self.max_iter is not None and self.max_iter < 0:
            raise ValueError(f"max_iter must be nonnegative, got {self.max_iter}")

    def iteration_cap(self, n):
        return 10 * n + 1000 if self.max_iter is None else self.max_iter


def dogleg_step(g, B, radius, newton_step=None):
    """Dogleg minimizer of g^T p + 0.5 p^T B p over ||p|| <= radius.

    `newton_step` is -B^{-1} g (shifted when B is indefinite); pass it in to reuse
    one factorization across several radii at the same point.
    """
    if newton_step is None:
        factor, _ = cholesky_with_shift(B)
        newton_step = -sla.cho_solve(factor, g, check_finite=False)
    if np.linalg.norm(newton_step) <= radius:
        return newton_step

    gBg = float(g @ B @ g)
    g_norm = float(np.linalg.norm(g))
    if gBg <= 0:
        return -(radius / g_norm) * g
    cauchy = -(float(g @ g) / gBg) * g
    cauchy_norm = float(np.linalg.norm(cauchy))
    if cauchy_norm >= radius:
        return (radius / cauchy_norm) * cauchy

    # ||cauchy + t d|| = radius for t in [0, 1]
    d = newton_step - cauchy
    a = float(d @ d)
    b = 2.0 * float(cauchy @ d)
    c = cauchy_norm ** 2 - radius ** 2
    t = (-b + np.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)
    return cauchy + t * d


def _finish(method, status, oracle, x, f_val, g, k, rejected, shifts, start, trace):
    return SolveReport(
        method=method, status=status, x_final=np.array(x, dtype=float), f_final=float(f_val),
        g_inf_norm=float(np.max(np.abs(g))), iterations=k,
        f_evals=oracle.f_evals, g_evals=oracle.g_evals, hessian_evals=oracle.hessian_evals,
        rejected_steps=rejected, wall_time_s=time.perf_counter() - start,
        regularized_solves=int(shifts), trace=trace,
    )


def trust_region_newton(problem, x0=None, cfg=None, deadline=None):
    """Dogleg trust-region Newton with analytic or finite-difference Hessians."""
    cfg = BaselineConfig() if cfg is None else cfg
    start = time.perf_counter()
    oracle = CountingOracle(problem)
    x = np.array(problem.default_x0 if x0 is None else x0, dtype=float)
    cap = cfg.iteration_cap(x.size)
    trace = [] if cfg.record_trace else None
    k = rejected = shifts = 0
    f_val, g = np.nan, np.full(x.size, np.nan)
    radius = cfg.tr_radius0

    try:
        if not np.all(np.isfinite(x)):
            raise NonFiniteEvaluation("starting point is not finite")
        f_val = oracle.eval_f(x)
        g = oracle.eval_g(x)
        B = oracle.hessian(x, cfg.fd_eps)
        newton, tau = None, 0.0

        while np.max(np.abs(g)) > cfg.grad_tol:
            if k >= cap:
                status = Status.MAX_ITERATIONS
                break
            if deadline is not None and time.monotonic() > deadline:
                status = Status.TIMEOUT
                break

            if newton is None:
                factor, tau = cholesky_with_shift(B)
                newton = -sla.cho_solve(factor, g, check_finite=False)
                shifts += tau > 0
            p = dogleg_step(g, B, radius, newton_step=newton)
            predicted = -(float(g @ p) + 0.5 * float(p @ B @ p))
            f_trial = oracle.eval_f_or_inf(x + p)
            rho = (f_val - f_trial) / predicted if predicted > 0 else -np.inf
            if not np.isfinite(rho):
                rho = -np.inf

            step_norm = float(np.linalg.norm(p))
            tried = radius
            if rho < 0.25:
                radius = 0.25 * step_norm
            elif rho > 0.75 and step_norm >= (1.0 - 1e-8) * radius:
                radius = min(2.0 * radius, cfg.tr_radius_max)

            accepted = rho > cfg.tr_accept
            if accepted:
                x_new = x + p
                g_new = oracle.eval_g(x_new)
                B_new = oracle.hessian(x_new, cfg.fd_eps)
                x, f_val, g, B = x_new, f_trial, g_new, B_new
                newton = None
            else:
                rejected += 1
            if radius == 0.0:
                raise SingularSystem("trust region radius collapsed to zero")

            g_inf = float(np.max(np.abs(g)))
            logger.debug("%s k=%d f=%.6e |g|=%.3e radius=%.3e rho=%.4f %s", problem.name, k, f_val,
                         g_inf, tried, rho, "accept" if accepted else "reject")
            if trace is not None:
                trace.append(TraceRecord(k=k, f=f_val, g_inf=g_inf, dt=tried, rho=float(rho),
                                         accepted=accepted, mode="DOGLEG"))
            k += 1
        else:
            status = Status.CONVERGED
    except SingularSystem as e:
        logger.warning("%s: %s", problem.name, e)
        status = Status.LINEAR_ALGEBRA_FAILURE
    except NonFiniteEvaluation as e:
        logger.warning("%s: %s", problem.name, e)
        status = Status.NON_FINITE_EVALUATION

    return _finish("trust_region", status, oracle, x, f_val, g, k, rejected, shifts, start, trace)


def bfgs_linesearch(problem, x0=None, cfg=None, deadline=None):
    """BFGS on the inverse Hessian with backtracking Armijo steps tried from 1 and halved."""
    cfg = BaselineConfig() if cfg is None else cfg
    start = time.perf_counter()
    oracle = CountingOracle(problem)
    x = np.array(problem.default_x0 if x0 is None else x0, dtype=float)
    n = x.size
    cap = cfg.iteration_cap(n)
    trace = [] if cfg.record_trace else None
    k = rejected = 0
    f_val, g = np.nan, np.full(n, np.nan)
    H = np.eye(n)
    scaled = False

    try:
        if not np.all(np.isfinite(x)):
            raise NonFiniteEvaluation("starting point is not finite")
        f_val = oracle.eval_f(x)
        g = oracle.eval_g(x)

        while np.max(np.abs(g)) > cfg.grad_tol:
            if k >= cap:
                status = Status.MAX_ITERATIONS
                break
            if deadline is not None and time.monotonic() > deadline:
                status = Status.TIMEOUT
                break

            p = -(H @ g)
            slope = float(g @ p)
            if not slope < 0:
                logger.debug("%s: BFGS direction is not a descent direction, resetting H", problem.name)
                H = np.eye(n)
                scaled = False
                p = -g
                slope = -float(g @ g)

            alpha = 1.0
            for _ in range(cfg.max_backtracks):
                f_trial = oracle.eval_f_or_inf(x + alpha * p)
                if f_trial <= f_val + cfg.armijo_c * alpha * slope:
                    break
                rejected += 1
                alpha *= cfg.backtrack_factor
            else:
                logger.warning("%s: line search exhausted %d backtracks", problem.name, cfg.max_backtracks)
                status = Status.LINE_SEARCH_FAILURE
                break

            s = alpha * p
            g_new = oracle.eval_g(x + s)
            y = g_new - g
            rho = (f_val - f_trial) / (-alpha * slope)
            x, f_val, g = x + s, f_trial, g_new

            sy = float(s @ y)
            if sy > 1e-10 * np.linalg.norm(s) * np.linalg.norm(y):
                if not scaled:
                    H = (sy / float(y @ y)) * np.eye(n)
                    scaled = True
                Hy = H @ y
                r = 1.0 / sy
                H = H - r * (np.outer(s, Hy) + np.outer(Hy, s)) + (r * r * float(y @ Hy) + r) * np.outer(s, s)

            g_inf = float(np.max(np.abs(g)))
            logger.debug("%s k=%d f=%.6e |g|=%.3e alpha=%.3e", problem.name, k, f_val, g_inf, alpha)
            if trace is not None:
                trace.append(TraceRecord(k=k, f=f_val, g_inf=g_inf, dt=alpha, rho=float(rho),
                                         accepted=True, mode="BFGS"))
            k += 1
        else:
            status = Status.CONVERGED
    except NonFiniteEvaluation as e:
        logger.warning("%s: %s", problem.name, e)
        status = Status.NON_FINITE_EVALUATION

    return _finish("bfgs", status, oracle, x, f_val, g, k, rejected, 0, start, trace)
