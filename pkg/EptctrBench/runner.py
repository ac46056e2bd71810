"""
This file is the entry point for EptctrBench.

    python -m EptctrBench.runner --method eptctr trust_region bfgs --problem all --format markdown
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import dataclasses
import difflib
import json
import logging
import os
import platform
import sys
import time

import numpy as np
import scipy
from tqdm import tqdm

from .baselines import BaselineConfig, bfgs_linesearch, trust_region_newton
from .problems import DEFAULT_N, get_problem, problem_names
from .report import FORMATS, emit_report
from .schema import BenchmarkRecord, EnhancedJSONEncoder, SuiteReport, UsageError
from .solver import SolverConfig, eptctr_solve

logger = logging.getLogger(__name__)

METHODS = {
    "eptctr": eptctr_solve,
    "trust_region": trust_region_newton,
    "bfgs": bfgs_linesearch,
}
DEFAULT_TIME_LIMIT_S = 300.0
TIME_LIMIT_ENV = "EPTCTR_TIME_LIMIT_S"


def default_time_limit():
    raw = os.environ.get(TIME_LIMIT_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TIME_LIMIT_S
    try:
        limit = float(raw)
    except ValueError:
        raise UsageError(f"{TIME_LIMIT_ENV}={raw!r} is not a number")
    if limit <= 0:
        raise UsageError(f"{TIME_LIMIT_ENV} must be positive, got {raw}")
    return limit


def resolve_methods(names):
    if "all" in names:
        return sorted(METHODS)
    for name in names:
        if name not in METHODS:
            raise UsageError(f"unknown method '{name}'", difflib.get_close_matches(name, METHODS.keys()))
    return sorted(set(names))


def resolve_problems(names, n=DEFAULT_N, include_optional=False):
    """Build the problems to run; "all" is the core suite, plus extras with include_optional."""
    if "all" in names:
        problems = []
        for name in problem_names(include_optional):
            try:
                problems.append(get_problem(name, n))
            except UsageError as e:
                logger.warning("skipping %s at n=%d: %s", name, n, e)
        return problems
    return [get_problem(name, n) for name in sorted(set(names))]


def environment_note():
    return {
        "platform": platform.platform(),
        "processor": platform.processor(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }


def run_one(method, problem, x0=None, solver_cfg=None, baseline_cfg=None, time_limit=None):
    """Run one (problem, method) pair under a per-run time limit in seconds."""
    deadline = None if time_limit is None else time.monotonic() + time_limit
    cfg = solver_cfg if method == "eptctr" else baseline_cfg
    result = METHODS[method](problem, x0, cfg, deadline)
    logger.info("%s/%s: %s after %d iterations (%.2fs, |g|=%.2e)", problem.name, method,
                result.status.value, result.iterations, result.wall_time_s, result.g_inf_norm)
    return result


def run_suite(methods, problems, n=DEFAULT_N, solver_cfg=None, baseline_cfg=None, x0_scalar=None,
              time_limit=None, parallel=1, include_optional=False, progress=False,
              traces=None):
    """Run every requested (problem, method) pair and collect one BenchmarkRecord each.

    Records come back ordered by (problem, method) whatever order the runs finish in.
    When `traces` is a dict, per-iteration traces are stored in it under "problem:method".
    time_limit defaults to $EPTCTR_TIME_LIMIT_S, else 300 seconds per run.
    """
    if parallel < 1:
        raise UsageError(f"--parallel must be >= 1, got {parallel}")
    if n < 2:
        raise UsageError(f"--n must be >= 2, got {n}")
    time_limit = default_time_limit() if time_limit is None else time_limit
    methods = resolve_methods(methods)
    problem_list = resolve_problems(problems, n, include_optional)
    solver_cfg = SolverConfig() if solver_cfg is None else solver_cfg
    baseline_cfg = BaselineConfig() if baseline_cfg is None else baseline_cfg
    if traces is not None:
        solver_cfg = dataclasses.replace(solver_cfg, record_trace=True)
        baseline_cfg = dataclasses.replace(baseline_cfg, record_trace=True)

    pairs = [(p, m) for p in problem_list for m in methods]

    def work(pair):
        p, m = pair
        x0 = None if x0_scalar is None else x0_scalar * np.ones(p.dim)
        return run_one(m, p, x0, solver_cfg, baseline_cfg, time_limit)

    with tqdm(total=len(pairs), disable=not progress, file=sys.stderr) as bar:
        if parallel == 1:
            results = []
            for pair in pairs:
                results.append(work(pair))
                bar.update(1)
        else:
            with ThreadPoolExecutor(max_workers=parallel) as pool:
                futures = [pool.submit(work, pair) for pair in pairs]
                results = []
                for fut in futures:
                    results.append(fut.result())
                    bar.update(1)

    records = []
    for (p, m), result in zip(pairs, results):
        records.append(BenchmarkRecord(
            problem=p.name, n=p.dim, method=m, iterations=result.iterations,
            wall_time_s=result.wall_time_s, final_g_inf=result.g_inf_norm,
            f_final=result.f_final, status=result.status,
        ))
        if traces is not None:
            traces[f"{p.name}:{m}"] = result.trace
    records.sort(key=lambda r: (r.problem, r.method))

    config = {
        "methods": methods, "n": n, "x0_scalar": x0_scalar, "time_limit_s": time_limit,
        "eptctr": dataclasses.asdict(solver_cfg), "baseline": dataclasses.asdict(baseline_cfg),
    }
    return SuiteReport(records=records, config=config, environment=environment_note())


def setup_logging(level, log_file=None):
    fmt = "%(asctime)s %(levelname)s %(name)s %(message)s"
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file is not None:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=getattr(logging, level.upper()), format=fmt, handlers=handlers, force=True)


def main(argv=None):
    parser = argparse.ArgumentParser(description="Benchmark Eptctr against trust-region and line-search baselines")
    parser.add_argument("--method", type=str, nargs='+', default=["eptctr"], help=f"solvers to run: {', '.join(sorted(METHODS))} or all")
    parser.add_argument("--problem", type=str, nargs='+', default=["all"], help="problem names, or all for the core suite")
    parser.add_argument("--include-optional", action="store_true", help="with --problem all, also run the extra problems")
    parser.add_argument("--n", type=int, default=DEFAULT_N, help="dimension of the scalable problems")
    parser.add_argument("--tol", type=float, default=SolverConfig.grad_tol, help="stop when ||g||_inf <= tol")
    parser.add_argument("--max-iter", type=int, default=None, help="iteration cap (default 10n + 1000)")
    parser.add_argument("--dt0", type=float, default=SolverConfig.dt0, help="initial time-step of Eptctr")
    parser.add_argument("--x0-scalar", type=float, default=None, help="start every problem from c * ones(n)")
    parser.add_argument("--time-limit", type=float, default=None, help=f"seconds per run (default ${TIME_LIMIT_ENV} or {DEFAULT_TIME_LIMIT_S:g})")
    parser.add_argument("--parallel", type=int, default=1, help="number of runs executed concurrently")
    parser.add_argument("--format", type=str, default="csv", choices=FORMATS, help="report format written to stdout")
    parser.add_argument("--trace", type=str, default=None, help="write per-iteration traces as JSON to this path")
    parser.add_argument("--progress", action="store_true", help="show a progress bar on stderr")
    parser.add_argument("--log-level", type=str, default="warning", help="debug, info, warning or error")
    parser.add_argument("--log-file", type=str, default=None, help="also write the log to this file")
    args = parser.parse_args(argv)

    try:
        setup_logging(args.log_level, args.log_file)
    except (AttributeError, TypeError):
        print(f"error: unknown log level '{args.log_level}'", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    try:
        time_limit = args.time_limit if args.time_limit is not None else default_time_limit()
        if time_limit <= 0:
            raise UsageError(f"--time-limit must be positive, got {time_limit}")
        try:
            solver_cfg = SolverConfig(grad_tol=args.tol, max_iter=args.max_iter, dt0=args.dt0)
            baseline_cfg = BaselineConfig(grad_tol=args.tol, max_iter=args.max_iter)
        except ValueError as e:
            raise UsageError(str(e))
        traces = {} if args.trace is not None else None
        report = run_suite(args.method, args.problem, n=args.n, solver_cfg=solver_cfg,
                           baseline_cfg=baseline_cfg, x0_scalar=args.x0_scalar, time_limit=time_limit,
                           parallel=args.parallel, include_optional=args.include_optional,
                           progress=args.progress, traces=traces)
        emit_report(report, args.format, sys.stdout)
        if traces is not None:
            with open(args.trace, "w") as f:
                json.dump(traces, f, indent=4, cls=EnhancedJSONEncoder)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
