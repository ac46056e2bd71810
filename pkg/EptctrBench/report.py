""" Serialize benchmark records as CSV, JSON or a markdown comparison table, and read them back. """

import dataclasses
import io
import json
import os

import pandas as pd
from dacite import Config, from_dict

from .schema import BenchmarkRecord, EnhancedJSONEncoder, Status, SuiteReport, UsageError

FORMATS = ("csv", "json", "markdown")
CSV_COLUMNS = [f.name for f in dataclasses.fields(BenchmarkRecord)]

_DACITE_CONFIG = Config(cast=[Status], type_hooks={int: int, float: float, str: str})


def to_frame(report):
    rows = [dataclasses.asdict(r) for r in report.records]
    df = pd.DataFrame(rows, columns=CSV_COLUMNS)
    if len(df):
        df["status"] = [Status(s).value for s in df["status"]]
    return df


def _markdown(report):
    methods = sorted({r.method for r in report.records})
    problems = []
    by_pair = {}
    for r in report.records:
        if (r.problem, r.n) not in problems:
            problems.append((r.problem, r.n))
        by_pair[(r.problem, r.n, r.method)] = r

    header = ["Problem"]
    for m in methods:
        header += [f"{m} Iter (time (s))", f"{m} ‖g‖∞"]
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for name, n in problems:
        cells = [f"{name} (n = {n})"]
        for m in methods:
            r = by_pair.get((name, n, m))
            if r is None:
                cells += ["-", "-"]
                continue
            failed = "" if r.status == Status.CONVERGED else " (failed)"
            cells += [f"{r.iterations} ({r.wall_time_s:.2f}){failed}", f"{r.final_g_inf:.2e}"]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_report(report, fmt="csv", stream=None):
    """Render `report` in `fmt`; the text is returned and also written to `stream` if given."""
    if fmt == "csv":
        buf = io.StringIO()
        to_frame(report).to_csv(buf, index=False)
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps(report.records, indent=4, cls=EnhancedJSONEncoder) + "\n"
    elif fmt == "markdown":
        text = _markdown(report)
    else:
        raise UsageError(f"unknown report format '{fmt}'", [f for f in FORMATS if f[0] == str(fmt)[:1]])
    if stream is not None:
        stream.write(text)
    return text


def records_from_json(data):
    return [from_dict(data_class=BenchmarkRecord, data=d, config=_DACITE_CONFIG) for d in data]


def records_from_csv(text):
    df = pd.read_csv(io.StringIO(text), float_precision="round_trip", dtype={"problem": str, "method": str})
    return [from_dict(data_class=BenchmarkRecord, data=row, config=_DACITE_CONFIG)
            for row in df.to_dict("records")]


def load_report(path):
    """Read a report written with the csv or json format back into a SuiteReport."""
    ext = os.path.splitext(path)[1].lower()
    with open(path, "r") as f:
        text = f.read()
    if ext == ".csv":
        return SuiteReport(records=records_from_csv(text))
    if ext == ".json":
        return SuiteReport(records=records_from_json(json.loads(text)))
    raise UsageError(f"cannot tell the report format of '{path}'; expected .csv or .json")


def success_counts(report):
    counts = {}
    for r in report.records:
        counts[r.method] = counts.get(r.method, 0) + (r.status == Status.CONVERGED)
    return counts
