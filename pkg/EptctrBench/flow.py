"""
Small-step reference integrators for the flows Eptctr discretizes.

The generalized gradient flow is dx/dt = -H(x) g(x); with H = B(x)^{-1} it is the
continuous Newton flow, along which every gradient component decays like e^{-t}.
These routines are slow on purpose and exist to check the solver against.
"""

from dataclasses import dataclass, field
import logging
from typing import List

import numpy as np
from scipy import linalg as sla

from .linalg import solve_spd, DEFAULT_FD_EPS
from .problems import CountingOracle
from .schema import OracleFailure

logger = logging.getLogger(__name__)


@dataclass
class FlowTrajectory:
    times: np.ndarray
    states: List[np.ndarray]
    residual_norms: np.ndarray
    gradients: List[np.ndarray] = field(default_factory=list)
    f_values: np.ndarray = None

    def __post_init__(self):
        if not (len(self.times) == len(self.states) == len(self.residual_norms)):
            raise ValueError("trajectory arrays have different lengths")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("trajectory times must be strictly increasing")


def newton_preconditioner(problem, eps=DEFAULT_FD_EPS):
    """H(x) g = B(x)^{-1} g, regularized by a diagonal shift where B is not SPD."""
    oracle = CountingOracle(problem)

    def apply(x, g):
        return solve_spd(oracle.hessian(x, eps), g)
    return apply


def integrate_gradient_flow(problem, x0, t_end, h, preconditioner=None):
    """Explicit Euler on dx/dt = -preconditioner(x, g(x)); identity when not given.

    Steps have length h except possibly the last, which lands on t_end.
    """
    if h <= 0:
        raise ValueError(f"step h must be positive, got {h}")
    if t_end < 0:
        raise ValueError(f"t_end must be nonnegative, got {t_end}")
    if preconditioner is None:
        preconditioner = lambda x, g: g

    x = np.array(x0, dtype=float)
    g = np.asarray(problem.eval_g(x), dtype=float)
    times, states, grads, fs = [0.0], [x.copy()], [g], [float(problem.eval_f(x))]
    steps = int(np.ceil(t_end / h - 1e-9)) if t_end > 0 else 0
    t = 0.0
    for i in range(steps):
        t_next = min((i + 1) * h, t_end)
        x = x - (t_next - t) * preconditioner(x, g)
        g = np.asarray(problem.eval_g(x), dtype=float)
        t = t_next
        times.append(t)
        states.append(x.copy())
        grads.append(g)
        fs.append(float(problem.eval_f(x)))
    logger.debug("%s: integrated %d Euler steps to t=%.3g", problem.name, steps, t)

    return FlowTrajectory(
        times=np.array(times), states=states,
        residual_norms=np.array([np.linalg.norm(gi) for gi in grads]),
        gradients=grads, f_values=np.array(fs),
    )


def integrate_newton_flow(problem, x0, t_end, h, eps=DEFAULT_FD_EPS):
    return integrate_gradient_flow(problem, x0, t_end, h, newton_preconditioner(problem, eps))


def one_step_consistency(problem, x, dt, frozen_preconditioner=True, tol=1e-12, max_inner=50,
                         eps=DEFAULT_FD_EPS):
    """Relative gap between the continuation step and a converged implicit Euler step.

    The implicit step s solves M s + dt g(x + s) = 0, with M = B(x) when the preconditioner
    is frozen at x and M = B(x + s) otherwise; it is found by Newton iteration until the
    update is below tol * ||s||. The continuation step is dt/(1+dt) * (-B(x)^{-1} g(x)).
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    oracle = CountingOracle(problem)
    x = np.asarray(x, dtype=float)
    g0 = oracle.eval_g(x)
    if not np.any(g0):
        return 0.0
    B0 = oracle.hessian(x, eps)
    s_cont = (dt / (1.0 + dt)) * -solve_spd(B0, g0)

    s = s_cont.copy()
    for j in range(max_inner):
        B_s = oracle.hessian(x + s, eps)
        M = B0 if frozen_preconditioner else B_s
        residual = M @ s + dt * oracle.eval_g(x + s)
        # the derivative of B(x+s) s is dropped in the unfrozen case
        J = M + dt * B_s
        try:
            delta = sla.solve(J, residual, check_finite=False)
        except (sla.LinAlgError, ValueError) as e:
            raise OracleFailure(f"implicit Euler Newton system is singular: {e}")
        s = s - delta
        if np.linalg.norm(delta) <= tol * max(np.linalg.norm(s), np.finfo(float).tiny):
            break
    else:
        raise OracleFailure(f"implicit Euler step did not converge in {max_inner} iterations")

    gap = np.linalg.norm(s_cont - s) / np.linalg.norm(s)
    logger.debug("%s: one-step gap %.3e at dt=%g after %d inner iterations", problem.name, gap, dt, j + 1)
    return float(gap)
