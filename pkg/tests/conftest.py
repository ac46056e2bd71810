import numpy as np
import pytest

from EptctrBench.problems import Problem
from tests.utils import quadratic_problem


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240617)


@pytest.fixture()
def spd_quadratic(rng) -> Problem:
    """A random SPD quadratic in 10 variables with eigenvalues in [0.5, 5]."""
    Q, _ = np.linalg.qr(rng.standard_normal((10, 10)))
    A = Q @ np.diag(np.linspace(0.5, 5.0, 10)) @ Q.T
    return quadratic_problem(0.5 * (A + A.T), rng.standard_normal(10), name="spd_quadratic")
