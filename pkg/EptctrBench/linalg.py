""" Dense linear algebra used by the solvers: FD Hessians, shifted Cholesky solves and symmetric spectra. """

import logging

import numpy as np
from scipy import linalg as sla

from .schema import NonFiniteEvaluation, SingularSystem, EigenFailure

logger = logging.getLogger(__name__)

DEFAULT_FD_EPS = 1e-6
MAX_SHIFT = 1e8


def symmetrize(A):
    A = np.asarray(A, dtype=float)
    return 0.5 * (A + A.T)


def fd_hessian(problem, x, eps=DEFAULT_FD_EPS):
    """Forward-difference Hessian from n+1 gradient evaluations, symmetrized.

    Column i is (g(x + eps*e_i) - g(x)) / eps.
    """
    if eps <= 0:
        raise ValueError(f"fd step must be positive, got {eps}")
    x = np.asarray(x, dtype=float)
    n = x.size
    g0 = np.asarray(problem.eval_g(x), dtype=float)
    if not np.all(np.isfinite(g0)):
        raise NonFiniteEvaluation("non-finite gradient at the base point of the FD Hessian")
    A = np.empty((n, n))
    xp = x.copy()
    for i in range(n):
        xp[i] = x[i] + eps
        gi = np.asarray(problem.eval_g(xp), dtype=float)
        xp[i] = x[i]
        if not np.all(np.isfinite(gi)):
            raise NonFiniteEvaluation(f"non-finite gradient at coordinate {i} of the FD Hessian")
        A[:, i] = (gi - g0) / eps
    return symmetrize(A)


def cholesky_with_shift(B):
    """Cholesky factor of B, or of B + tau*I when B is not positive definite.

    tau starts at 1e-8*(1 + max diagonal) and doubles until the factorization succeeds.
    Returns (cho_factor tuple, tau).
    """
    B = np.asarray(B, dtype=float)
    if not np.all(np.isfinite(B)):
        raise SingularSystem("matrix has non-finite entries")
    try:
        return sla.cho_factor(B, lower=True, check_finite=False), 0.0
    except sla.LinAlgError:
        pass

    eye = np.eye(B.shape[0])
    tau = 1e-8 * (1.0 + max(0.0, float(np.max(np.diag(B)))))
    while tau <= MAX_SHIFT:
        try:
            factor = sla.cho_factor(B + tau * eye, lower=True, check_finite=False)
            logger.info("Cholesky needed diagonal shift tau=%.3e", tau)
            return factor, tau
        except sla.LinAlgError:
            tau *= 2.0
    raise SingularSystem(f"no diagonal shift up to {MAX_SHIFT:g} makes the matrix positive definite")


def solve_spd(B, rhs):
    factor, _ = cholesky_with_shift(B)
    return sla.cho_solve(factor, np.asarray(rhs, dtype=float), check_finite=False)


def sym_eigenvalues(B):
    """Eigenvalues of a symmetric matrix in ascending order."""
    try:
        return sla.eigh(np.asarray(B, dtype=float), eigvals_only=True)
    except (sla.LinAlgError, ValueError) as e:
        raise EigenFailure(f"symmetric eigensolver failed: {e}")
