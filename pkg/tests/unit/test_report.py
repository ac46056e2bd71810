import io
import json
from pathlib import Path

import numpy as np
import pytest

from EptctrBench.report import CSV_COLUMNS, emit_report, load_report, success_counts
from EptctrBench.schema import (
    BenchmarkRecord, EnhancedJSONEncoder, Status, SuiteReport, TraceRecord, UsageError,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture()
def two_methods() -> SuiteReport:
    return SuiteReport(records=[
        BenchmarkRecord(problem="rosenbrock", n=1000, method="bfgs", iterations=11000, wall_time_s=20.5,
                        final_g_inf=3.2e-3, f_final=1e-2, status=Status.MAX_ITERATIONS),
        BenchmarkRecord(problem="rosenbrock", n=1000, method="eptctr", iterations=37, wall_time_s=1.234,
                        final_g_inf=1.5e-7, f_final=1.0000000000000002e-14, status=Status.CONVERGED),
    ])


def test_csv_header_only_for_empty_report():
    assert emit_report(SuiteReport(records=[]), "csv") == "problem,n,method,iterations,wall_time_s,final_g_inf,f_final,status\n"
    assert CSV_COLUMNS == ["problem", "n", "method", "iterations", "wall_time_s", "final_g_inf", "f_final", "status"]


def test_json_single_record(two_methods):
    report = SuiteReport(records=two_methods.records[1:])
    data = json.loads(emit_report(report, "json"))
    assert len(data) == 1
    assert set(data[0]) == set(CSV_COLUMNS)
    assert data[0]["status"] == "Converged"


def test_markdown_matches_golden_file(two_methods):
    assert emit_report(two_methods, "markdown") == (DATA / "report_two_methods.md").read_text(encoding="utf-8")


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip(two_methods, tmp_path, fmt):
    path = tmp_path / f"report.{fmt}"
    with open(path, "w") as f:
        emit_report(two_methods, fmt, f)
    loaded = load_report(str(path))
    assert loaded.records == two_methods.records
    assert all(isinstance(r.status, Status) for r in loaded.records)


def test_stream_receives_the_text(two_methods):
    buf = io.StringIO()
    text = emit_report(two_methods, "csv", buf)
    assert buf.getvalue() == text
    assert text.splitlines()[2].endswith(",Converged")


def test_unknown_format(two_methods, tmp_path):
    with pytest.raises(UsageError):
        emit_report(two_methods, "xml")
    path = tmp_path / "report.txt"
    path.write_text("")
    with pytest.raises(UsageError):
        load_report(str(path))


def test_success_counts(two_methods):
    assert success_counts(two_methods) == {"bfgs": 0, "eptctr": 1}


def test_encoder_handles_traces_and_numpy_values():
    rec = TraceRecord(k=0, f=1.5, g_inf=2.0, dt=1e-2, rho=1.0, accepted=True, mode="LBFGS")
    data = json.loads(json.dumps({"trace": [rec], "x": np.arange(2.0), "n": np.int64(3),
                                  "status": Status.STAGNATION}, cls=EnhancedJSONEncoder))
    assert data == {"trace": [{"k": 0, "f": 1.5, "g_inf": 2.0, "dt": 1e-2, "rho": 1.0, "accepted": True,
                               "mode": "LBFGS"}],
                    "x": [0.0, 1.0], "n": 3, "status": "Stagnation"}
    with pytest.raises(TypeError):
        json.dumps(len, cls=EnhancedJSONEncoder)
