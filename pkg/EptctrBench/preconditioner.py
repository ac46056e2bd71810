"""
The switching preconditioner of Eptctr.

While the run is well conditioned the Newton-like direction comes from the rank-two
revised L-BFGS inverse built from the last curvature pair (s, y):

    H = I - (y s^T + s y^T) / (y^T s) + 2 (y^T y) / (y^T s)^2 * s s^T

applied matrix-free. Once K_bad reaches 5, or the pair fails |s^T y| > theta ||s||^2,
the direction comes from the (finite-difference) Hessian instead, and K_bad never resets.
"""

import dataclasses
from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np

from .linalg import fd_hessian, DEFAULT_FD_EPS
from .schema import DegenerateCurvature, DomainError, Mode

logger = logging.getLogger(__name__)

K_BAD_LIMIT = 5
DEFAULT_THETA = 1e-6


@dataclass(frozen=True, eq=False)
class CurvaturePair:
    s_prev: np.ndarray
    y_prev: np.ndarray

    def __post_init__(self):
        if self.s_prev.shape != self.y_prev.shape:
            raise ValueError(f"curvature pair lengths differ: {self.s_prev.shape} vs {self.y_prev.shape}")

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros(n), np.zeros(n))

    @property
    def sy(self):
        return float(self.s_prev @ self.y_prev)

    def passes_theta_test(self, theta):
        return abs(self.sy) > theta * float(self.s_prev @ self.s_prev)


@dataclass(frozen=True, eq=False)
class PreconditionerState:
    pair: CurvaturePair
    k_bad: int = 0
    theta: float = DEFAULT_THETA
    mode: Mode = Mode.HESSIAN
    hessian_cache: Optional[np.ndarray] = None

    @classmethod
    def initial(cls, n, hessian, theta=DEFAULT_THETA):
        # the first direction always comes from B_0
        return cls(pair=CurvaturePair.zeros(n), theta=theta, mode=Mode.HESSIAN, hessian_cache=hessian)


def apply_lbfgs_inverse(pair, g):
    """H g for the revised L-BFGS inverse, using inner products and axpys only."""
    s, y = pair.s_prev, pair.y_prev
    ys = float(y @ s)
    if ys == 0.0:
        raise DegenerateCurvature("y^T s = 0, the L-BFGS inverse is undefined")
    sg = float(s @ g)
    yg = float(y @ g)
    yy = float(y @ y)
    return g - (sg / ys) * y + (2.0 * yy * sg / (ys * ys) - yg / ys) * s


def dense_lbfgs_inverse(pair):
    """The explicit n x n matrix H; test oracle for the matrix-free form."""
    s, y = pair.s_prev, pair.y_prev
    ys = float(y @ s)
    if ys == 0.0:
        raise DegenerateCurvature("y^T s = 0, the L-BFGS inverse is undefined")
    n = s.size
    return (np.eye(n)
            - (np.outer(y, s) + np.outer(s, y)) / ys
            + 2.0 * float(y @ y) / ys ** 2 * np.outer(s, s))


def lbfgs_direct(pair):
    """B = I - s s^T / (s^T s) + y y^T / (y^T y), the matrix H inverts."""
    s, y = pair.s_prev, pair.y_prev
    return np.eye(s.size) - np.outer(s, s) / float(s @ s) + np.outer(y, y) / float(y @ y)


def scaling_secant_check(pair):
    """|| H y - (y^T y / y^T s) s ||, zero when the scaling quasi-Newton property holds."""
    s, y = pair.s_prev, pair.y_prev
    ys = float(y @ s)
    Hy = apply_lbfgs_inverse(pair, y)
    return float(np.linalg.norm(Hy - (float(y @ y) / ys) * s))


def measurement_phi(lam, sigma, pair, n):
    """trace(B) - ln det(B) for B = lam (I - s s^T/s^T s) + sigma y y^T / y^T s."""
    s, y = pair.s_prev, pair.y_prev
    ys = float(y @ s)
    if lam <= 0 or sigma <= 0 or ys <= 0:
        raise DomainError(f"measurement function needs lam > 0, sigma > 0, y^T s > 0 (got {lam}, {sigma}, {ys})")
    return ((n - 1) * (lam - np.log(lam))
            + sigma * float(y @ y) / ys
            - np.log(sigma) - np.log(ys) + np.log(float(s @ s)))


def optimal_measurement_parameters(pair):
    s, y = pair.s_prev, pair.y_prev
    return 1.0, float(y @ s) / float(y @ y)


def update_and_select(state, new_pair, rho_bad, problem, x_next, fd_eps=None, hessian=None):
    """Count a bad ratio and pick the branch for the next direction.

    The Hessian branch is taken when K_bad >= 5 or the pair fails the theta test; the
    cached Hessian is refreshed at x_next through `hessian(x_next)` when given, else by
    finite differences on `problem`.
    """
    k_bad = state.k_bad + 1 if rho_bad else state.k_bad

    if k_bad < K_BAD_LIMIT and new_pair.passes_theta_test(state.theta):
        return dataclasses.replace(state, pair=new_pair, k_bad=k_bad, mode=Mode.LBFGS, hessian_cache=None)

    if state.mode == Mode.LBFGS:
        reason = "K_bad limit" if k_bad >= K_BAD_LIMIT else "curvature test"
        logger.info("switching preconditioner to the Hessian branch (%s, K_bad=%d)", reason, k_bad)
    if hessian is None:
        B = fd_hessian(problem, x_next, DEFAULT_FD_EPS if fd_eps is None else fd_eps)
    else:
        B = hessian(x_next)
    return dataclasses.replace(state, pair=new_pair, k_bad=k_bad, mode=Mode.HESSIAN, hessian_cache=B)
