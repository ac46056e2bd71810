import dataclasses
from dataclasses import dataclass, field
from enum import Enum
import json
from typing import List, Optional

import numpy as np


class EnhancedJSONEncoder(json.JSONEncoder):
    def default(self, o):
        if dataclasses.is_dataclass(o):
            return dataclasses.asdict(o)
        elif isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, np.generic):
            return o.item()
        elif isinstance(o, Enum):
            return o.value

        return super().default(o)


class EptctrError(Exception):
    def __init__(self, message):
        super().__init__(message)
        self.message = message
    def __str__(self):
        return self.message

class NonFiniteEvaluation(EptctrError):
    pass
class SingularSystem(EptctrError):
    pass
class EigenFailure(EptctrError):
    pass
class DegenerateCurvature(EptctrError):
    pass
class DegenerateModel(EptctrError):
    pass
class DomainError(EptctrError):
    pass
class OracleFailure(EptctrError):
    pass

class UsageError(EptctrError):
    def __init__(self, message, suggestions=()):
        if suggestions:
            message = f"{message} (did you mean: {', '.join(suggestions)}?)"
        super().__init__(message)
        self.suggestions = list(suggestions)


class Status(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    LINEAR_ALGEBRA_FAILURE = "LinearAlgebraFailure"
    NON_FINITE_EVALUATION = "NonFiniteEvaluation"
    LINE_SEARCH_FAILURE = "LineSearchFailure"
    TIMEOUT = "Timeout"
    STAGNATION = "Stagnation"


class Mode(str, Enum):
    LBFGS = "LBFGS"
    HESSIAN = "HESSIAN"


@dataclass(frozen=True)
class TraceRecord:
    k: int
    f: float
    g_inf: float
    dt: float  # time-step for Eptctr, trust radius or step length for the baselines
    rho: float
    accepted: bool
    mode: str


@dataclass(frozen=True)
class SolveReport:
    method: str
    status: Status
    x_final: np.ndarray
    f_final: float
    g_inf_norm: float
    iterations: int
    f_evals: int
    g_evals: int
    hessian_evals: int
    rejected_steps: int
    wall_time_s: float = 0.0
    regularized_solves: int = 0
    trace: Optional[List[TraceRecord]] = None

    @property
    def converged(self):
        return self.status == Status.CONVERGED


@dataclass(frozen=True)
class BenchmarkRecord:
    problem: str
    n: int
    method: str
    iterations: int
    wall_time_s: float
    final_g_inf: float
    f_final: float
    status: Status


@dataclass(frozen=True)
class SuiteReport:
    records: List[BenchmarkRecord]
    config: dict = field(default_factory=dict)
    environment: dict = field(default_factory=dict)
