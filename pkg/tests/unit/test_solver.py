import time

import numpy as np
import pytest

from EptctrBench.preconditioner import PreconditionerState
from EptctrBench.problems import CountingOracle, Problem, get_problem
from EptctrBench.schema import DegenerateModel, Mode, Status
from EptctrBench import solver
from EptctrBench.solver import (
    IterateState, SolverConfig, _HessianCache, acceptance_ratio, continuation_step,
    eptctr_solve, gradient_reduction, in_roundoff_band, model_reduction, take_step, update_dt,
)


def test_default_config():
    cfg = SolverConfig()
    assert (cfg.eta_a, cfg.eta1, cfg.eta2) == (1e-6, 0.25, 0.75)
    assert (cfg.gamma1, cfg.gamma2) == (2.0, 0.5)
    assert (cfg.theta, cfg.dt0, cfg.grad_tol) == (1e-6, 1e-2, 1e-6)
    assert cfg.iteration_cap(1000) == 11000
    assert SolverConfig(max_iter=7).iteration_cap(1000) == 7


@pytest.mark.parametrize("kwargs", [
    {"eta1": 0.8},
    {"eta_a": 0.0},
    {"gamma1": 1.0},
    {"gamma2": 1.5},
    {"dt0": 0.0},
    {"grad_tol": -1.0},
    {"max_iter": -1},
    {"dt_min": 0.0},
    {"dt_min": 0.5},
])
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        SolverConfig(**kwargs)


def test_update_dt_branches():
    cfg = SolverConfig()
    assert update_dt(0.1, 1.0, cfg) == 0.2
    assert update_dt(0.1, 0.5, cfg) == 0.1
    assert update_dt(0.1, -1.0, cfg) == 0.05


def test_continuation_step_limits():
    s_n = np.array([1.0, -2.0])
    np.testing.assert_array_equal(continuation_step(s_n, 1.0), 0.5 * s_n)
    np.testing.assert_allclose(continuation_step(s_n, 1e12), s_n)


def test_model_reduction_is_exact_for_newton_on_quadratics():
    p = get_problem("sphere", 3)
    x = np.array([1.0, -2.0, 0.5])
    g = p.eval_g(x)
    s = continuation_step(-0.5 * g, 0.3)
    assert model_reduction(g, s, 0.3) == pytest.approx(p.eval_f(x) - p.eval_f(x + s), rel=1e-12)


def test_acceptance_ratio_needs_model_reduction():
    assert acceptance_ratio(2.0, 1.0, 0.5) == 2.0
    with pytest.raises(DegenerateModel):
        acceptance_ratio(2.0, 1.0, 0.0)


def test_rejected_step_leaves_iterate_untouched():
    p = get_problem("sphere", 2)
    oracle = CountingOracle(p)
    cfg = SolverConfig()
    hessian_at = _HessianCache(oracle, cfg.fd_eps)
    x = np.array([1.0, 1.0])
    precond = PreconditionerState.initial(2, hessian_at(x))
    state = IterateState(x=x, f_val=p.eval_f(x), g=p.eval_g(x), s_newton=-100.0 * x,
                         dt=1.0, precond=precond, trial_success=False)
    before = (state.x.copy(), state.f_val, state.g.copy(), state.s_newton.copy())
    g_evals = oracle.g_evals

    rho, mode, shifted = take_step(state, oracle, cfg, hessian_at)

    assert rho < 0
    assert not state.trial_success
    assert np.array_equal(state.x, before[0])
    assert state.f_val == before[1]
    assert np.array_equal(state.g, before[2])
    assert np.array_equal(state.s_newton, before[3])
    assert state.dt == 0.5
    assert state.precond.pair is precond.pair
    assert state.precond.k_bad == 1
    assert oracle.g_evals == g_evals
    assert mode == Mode.HESSIAN and not shifted


def test_sphere_switches_to_lbfgs_after_first_step():
    report = eptctr_solve(get_problem("sphere", 10), cfg=SolverConfig(record_trace=True))
    assert report.status == Status.CONVERGED
    assert report.method == "eptctr"
    assert report.g_inf_norm <= 1e-6
    assert report.iterations <= 42
    assert len(report.trace) == report.iterations
    assert report.trace[0].mode == Mode.HESSIAN.value
    assert report.trace[1].mode == Mode.LBFGS.value
    assert report.trace[0].rho == pytest.approx(1.0)
    assert report.trace[1].dt == pytest.approx(2 * report.trace[0].dt)


@pytest.mark.parametrize("name, x_min", [
    ("booth", [1.0, 3.0]),
    ("matyas", [0.0, 0.0]),
])
def test_converges_to_known_minimizer(name, x_min):
    report = eptctr_solve(get_problem(name))
    assert report.converged
    np.testing.assert_allclose(report.x_final, x_min, atol=1e-4)


def test_rosenbrock_small():
    report = eptctr_solve(get_problem("rosenbrock", 2))
    assert report.converged
    np.testing.assert_allclose(report.x_final, [1.0, 1.0], atol=1e-5)


def test_accepted_values_decrease():
    report = eptctr_solve(get_problem("rosenbrock", 10), cfg=SolverConfig(record_trace=True))
    f_prev = np.inf
    for rec in report.trace:
        if rec.accepted:
            assert rec.f < f_prev
            f_prev = rec.f
    assert report.rejected_steps == sum(not rec.accepted for rec in report.trace)


def test_iteration_cap():
    report = eptctr_solve(get_problem("rosenbrock", 10), cfg=SolverConfig(max_iter=3))
    assert report.status == Status.MAX_ITERATIONS
    assert report.iterations == 3


def test_deadline_in_the_past_times_out():
    report = eptctr_solve(get_problem("rosenbrock", 10), deadline=time.monotonic() - 1.0)
    assert report.status == Status.TIMEOUT
    assert report.iterations == 0


def test_non_finite_start():
    report = eptctr_solve(get_problem("sphere", 3), x0=np.array([1.0, np.nan, 0.0]))
    assert report.status == Status.NON_FINITE_EVALUATION


def test_non_finite_gradient_keeps_last_good_iterate():
    def g(x):
        return 2.0 * x if x[0] > 1.5 else np.full(x.size, np.nan)

    p = Problem(name="bad_gradient", dim=2, eval_f=lambda x: float(x @ x), eval_g=g,
                eval_h=lambda x: 2.0 * np.eye(2), default_x0=2.0 * np.ones(2))
    report = eptctr_solve(p, cfg=SolverConfig(dt0=10.0))
    assert report.status == Status.NON_FINITE_EVALUATION
    np.testing.assert_array_equal(report.x_final, [2.0, 2.0])


def test_indefinite_start_is_regularized():
    p = Problem(
        name="double_well", dim=3,
        eval_f=lambda x: float(np.sum(0.25 * x ** 4 - 0.5 * x ** 2)),
        eval_g=lambda x: x ** 3 - x,
        eval_h=lambda x: np.diag(3.0 * x ** 2 - 1.0),
        default_x0=0.1 * np.ones(3),
    )
    report = eptctr_solve(p)
    assert report.regularized_solves >= 1
    assert report.converged
    np.testing.assert_allclose(np.abs(report.x_final), 1.0, atol=1e-5)


def test_objective_evaluated_once_per_iteration():
    p = get_problem("beale")
    report = eptctr_solve(p)
    assert report.hessian_evals >= 1
    assert report.f_evals == report.iterations + 1


def test_lbfgs_iterations_cost_one_gradient_per_accepted_step():
    report = eptctr_solve(get_problem("sphere", 10), cfg=SolverConfig(record_trace=True))
    assert report.converged
    assert all(rec.mode == Mode.LBFGS.value for rec in report.trace[1:])
    accepted = report.iterations - report.rejected_steps
    assert report.f_evals == report.iterations + 1
    assert report.g_evals == 1 + accepted
    assert report.hessian_evals == 1


@pytest.mark.parametrize("name", ["rosenbrock", "beale", "branin", "zakharov", "dixon_price"])
def test_model_predicts_reduction_on_every_trial(monkeypatch, name):
    seen = []

    def recording(g, s, dt):
        reduction = model_reduction(g, s, dt)
        seen.append((bool(np.any(g)), reduction))
        return reduction

    monkeypatch.setattr(solver, "model_reduction", recording)
    eptctr_solve(get_problem(name, 10))
    assert seen
    assert all(reduction > 0 for nonzero_g, reduction in seen if nonzero_g)


def test_gradient_reduction_is_exact_on_quadratics(spd_quadratic, rng):
    p = spd_quadratic
    x = rng.standard_normal(p.dim)
    s = rng.standard_normal(p.dim)
    expected = p.eval_f(x) - p.eval_f(x + s)
    assert gradient_reduction(p.eval_g(x), p.eval_g(x + s), s) == pytest.approx(expected, rel=1e-9)


def test_roundoff_band():
    assert in_roundoff_band(-1.67e8, -1.67e8)
    assert in_roundoff_band(-1.67e8, -1.67e8 - 1e-3)
    assert not in_roundoff_band(1.0, 0.5)
    assert not in_roundoff_band(1.0, np.inf)


def test_objective_offset_below_rounding_still_converges():
    """f carries a constant far larger than its variation, so f differences are all rounding."""
    offset = 1e8
    p = Problem(name="offset_sphere", dim=3, eval_f=lambda x: float(offset + x @ x),
                eval_g=lambda x: 2.0 * x, eval_h=lambda x: 2.0 * np.eye(3),
                default_x0=1e-2 * np.ones(3))
    report = eptctr_solve(p, cfg=SolverConfig(record_trace=True))
    assert report.converged
    assert report.g_inf_norm <= 1e-6
    assert all(rec.dt > 0 for rec in report.trace)


def test_time_step_floor_stops_with_stagnation():
    start = 2.0 * np.ones(2)
    p = Problem(name="walled", dim=2,
                eval_f=lambda x: float(x @ x) if np.array_equal(x, start) else np.inf,
                eval_g=lambda x: 2.0 * x, eval_h=lambda x: 2.0 * np.eye(2), default_x0=start)
    report = eptctr_solve(p, cfg=SolverConfig(record_trace=True))
    assert report.status == Status.STAGNATION
    # 1e-2 * 2**-40 is the first halving below 1e-14
    assert report.iterations == 40
    assert report.rejected_steps == report.iterations
    assert all(rec.dt > 0 for rec in report.trace)
    np.testing.assert_array_equal(report.x_final, start)
