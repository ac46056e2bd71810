"""
The mandatory suite at n = 1000 with all three methods.
"""
import math

import pytest

from EptctrBench.problems import mandatory_names
from EptctrBench.report import success_counts
from EptctrBench.runner import run_suite
from EptctrBench.schema import Status
from EptctrBench.solver import ROUNDOFF_BAND

TIME_LIMIT_S = 60.0


@pytest.fixture(scope="module")
def suite():
    traces = {}
    report = run_suite(["all"], ["all"], n=1000, time_limit=TIME_LIMIT_S, parallel=4, traces=traces)
    return report, traces


def test_one_record_per_pair(suite):
    report, _ = suite
    assert len(report.records) == 3 * len(mandatory_names())
    pairs = {(r.problem, r.method) for r in report.records}
    assert len(pairs) == len(report.records)


def test_eptctr_coverage(suite):
    report, _ = suite
    eptctr = [r for r in report.records if r.method == "eptctr"]
    converged = [r for r in eptctr if r.status == Status.CONVERGED]
    assert len(converged) >= math.ceil(0.9 * len(eptctr))
    assert all(r.final_g_inf <= 1e-6 for r in converged)
    assert all(r.status != Status.TIMEOUT for r in eptctr)


def test_eptctr_is_at_least_as_robust_as_baselines(suite):
    report, _ = suite
    counts = success_counts(report)
    assert counts["eptctr"] >= counts["trust_region"]
    assert counts["eptctr"] >= counts["bfgs"]


def test_accepted_values_strictly_decrease(suite):
    """Strict descent wherever the f difference is resolvable in floating point."""
    _, traces = suite
    for key, trace in traces.items():
        accepted = [rec.f for rec in trace if rec.accepted]
        for a, b in zip(accepted, accepted[1:]):
            assert b < a or abs(b - a) <= ROUNDOFF_BAND * abs(a), key
