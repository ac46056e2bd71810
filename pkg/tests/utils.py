import numpy as np

from EptctrBench.problems import Problem


def random_pair(rng, n, positive=False, min_cos=0.1):
    """A curvature pair (s, y) with |cos(s, y)| >= min_cos, and y^T s > 0 when positive."""
    while True:
        s = rng.standard_normal(n) * np.exp(rng.uniform(-2, 2))
        y = rng.standard_normal(n) * np.exp(rng.uniform(-2, 2))
        cos = float(s @ y) / (np.linalg.norm(s) * np.linalg.norm(y))
        if abs(cos) < min_cos or (positive and cos <= 0):
            continue
        return s, y


def quadratic_problem(A, b=None, name="quadratic"):
    """f = 0.5 x^T A x - b^T x with the exact Hessian A."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    b = np.zeros(n) if b is None else np.asarray(b, dtype=float)
    return Problem(
        name=name, dim=n,
        eval_f=lambda x: float(0.5 * x @ A @ x - b @ x),
        eval_g=lambda x: A @ x - b,
        eval_h=lambda x: A,
        default_x0=2.0 * np.ones(n),
        known_x_min=np.linalg.solve(A, b),
    )


def random_spd(rng, n, low=0.1, high=10.0):
    """Q diag(lambda) Q^T with eigenvalues spread log-uniformly over [low, high]."""
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    A = Q @ np.diag(np.exp(rng.uniform(np.log(low), np.log(high), n))) @ Q.T
    return 0.5 * (A + A.T)
