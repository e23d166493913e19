import numpy as np
import pytest

from paulipack.coloring import InteractionGraph
from paulipack.qaoa import (
    EnergyTrace,
    OptimizerConfig,
    ae_gain,
    ae_per_edge,
    ansatz_depth,
    maxcut_ising,
    nelder_mead_maximize,
    ordered_cost_terms,
    ramp_initial_params,
    run_qaoa,
)
from paulipack.simulator import NoiseConfig, QaoaParams, expectation, qaoa_state
from paulipack.trotter import LADDER_COST, ORDER_BASELINE, REORDER_METHODS

TRIANGLE = InteractionGraph(3, [(1, 2), (2, 3), (1, 3)])
C4 = InteractionGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def test_ae_per_edge():
    assert ae_per_edge(3.0, 3) == 1.0
    assert ae_per_edge(0.0, 5) == 0.0
    with pytest.raises(ValueError):
        ae_per_edge(1.0, 0)


def test_maxcut_ising_signs():
    cost = maxcut_ising(TRIANGLE)
    assert cost.couplings == {(1, 2): 1.0, (2, 3): 1.0, (1, 3): 1.0}
    h = cost.to_hamiltonian()
    assert all(t.coefficient == -1.0 for t in h.terms)


def test_maxcut_ising_rejects_loops_and_empty():
    with pytest.raises(ValueError):
        maxcut_ising(InteractionGraph(2, [(1, 1)]))
    with pytest.raises(ValueError):
        maxcut_ising(InteractionGraph(2))


# ---------------------------------------------------------------- optimizer


def test_nelder_mead_1d_parabola():
    x, trace = nelder_mead_maximize(
        lambda v: -((v[0] - 1.0) ** 2),
        np.array([0.0]),
        OptimizerConfig(max_iterations=200),
    )
    assert abs(x[0] - 1.0) < 1e-4
    assert len(trace.values) <= 200


def test_nelder_mead_2d():
    target = np.array([1.0, 2.0])
    x, _ = nelder_mead_maximize(
        lambda v: -float(np.sum((v - target) ** 2)),
        np.zeros(2),
        OptimizerConfig(max_iterations=400, tolerance=1e-12),
    )
    assert np.linalg.norm(x - target) < 1e-3


def test_trace_cumulative_max_monotone():
    _, trace = nelder_mead_maximize(
        lambda v: float(np.sin(3 * v[0]) - 0.1 * v[0] ** 2),
        np.array([0.3]),
        OptimizerConfig(max_iterations=120),
    )
    cm = trace.cumulative_max
    assert all(b >= a for a, b in zip(cm, cm[1:]))
    assert trace.best_value == cm[-1] == max(trace.values)


def test_nelder_mead_rejects_non_finite():
    with pytest.raises(RuntimeError):
        nelder_mead_maximize(
            lambda v: float("nan"), np.array([0.0]), OptimizerConfig()
        )


def test_optimizer_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(max_iterations=0)
    with pytest.raises(ValueError):
        OptimizerConfig(tolerance=0.0)


def test_energy_trace_from_evaluations():
    trace = EnergyTrace.from_evaluations(
        [0.1, 0.5, 0.3], [np.array([i]) for i in range(3)]
    )
    assert trace.cumulative_max == (0.1, 0.5, 0.5)
    assert trace.best_params == (1.0,)


# -------------------------------------------------------------------- depth


def test_ordered_cost_terms_orders():
    base, colors = ordered_cost_terms(C4, ORDER_BASELINE)
    assert colors is None and len(base) == 4
    for method in REORDER_METHODS:
        terms, colors = ordered_cost_terms(C4, method)
        assert colors >= 2
        assert sorted(str(t.string) for t in terms) == sorted(str(t.string) for t in base)


def test_ansatz_depth_structure():
    info = ansatz_depth(C4, ORDER_BASELINE, p_layers=2)
    assert info.mixer_depth == 1
    assert info.total_depth == 2 * (info.cost_layer_depth + 1)
    ladder = ansatz_depth(C4, ORDER_BASELINE, p_layers=1, cost_model=LADDER_COST)
    assert ladder.mixer_depth == 3
    for method in REORDER_METHODS:
        assert (
            ansatz_depth(C4, method, 2).cost_layer_depth <= info.cost_layer_depth
        )


def test_ramp_initial_params():
    x = ramp_initial_params(2)
    assert np.allclose(x, [0.375, 0.125, 0.125, 0.375])


# ----------------------------------------------------------------- run_qaoa


def test_run_qaoa_noiseless_order_invariance():
    cfg = OptimizerConfig(max_iterations=150)
    noise = NoiseConfig(rate=0.0)
    traces = {
        order: run_qaoa(C4, order, 2, noise, cfg)
        for order in (ORDER_BASELINE, *REORDER_METHODS)
    }
    base = traces[ORDER_BASELINE].best_value
    for order in REORDER_METHODS:
        assert abs(traces[order].best_value - base) < 1e-9


def test_run_qaoa_noisy_prefers_shallower():
    cfg = OptimizerConfig(max_iterations=150)
    noise = NoiseConfig(rate=1e-3)
    base = run_qaoa(C4, ORDER_BASELINE, 2, noise, cfg)
    for order in REORDER_METHODS:
        reordered = run_qaoa(C4, order, 2, noise, cfg)
        assert ae_gain(reordered, base) >= 0.0


def test_run_qaoa_deterministic():
    cfg = OptimizerConfig(max_iterations=80)
    noise = NoiseConfig(rate=1e-3)
    a = run_qaoa(TRIANGLE, ORDER_BASELINE, 2, noise, cfg)
    b = run_qaoa(TRIANGLE, ORDER_BASELINE, 2, noise, cfg)
    assert a.values == b.values
    assert a.best_params == b.best_params


def test_run_qaoa_against_grid_oracle():
    """p = 1 triangle: the optimizer lands within 2e-2 of an exhaustive
    (beta, gamma) grid at 0.01 resolution."""
    cost = maxcut_ising(TRIANGLE)
    grid = np.arange(0.0, np.pi + 1e-9, 0.01)
    best = -np.inf
    for beta in grid:
        for gamma in grid:
            val = expectation(
                qaoa_state(QaoaParams((beta,), (gamma,)), cost), cost
            ) / 3.0
            if val > best:
                best = val
    trace = run_qaoa(
        TRIANGLE, ORDER_BASELINE, 1, NoiseConfig(rate=0.0),
        OptimizerConfig(max_iterations=300),
    )
    assert trace.best_value >= best - 2e-2


def test_ae_gain_identical_traces():
    cfg = OptimizerConfig(max_iterations=60)
    trace = run_qaoa(TRIANGLE, ORDER_BASELINE, 2, NoiseConfig(rate=0.0), cfg)
    assert ae_gain(trace, trace) == 0.0


def test_objective_bounded_for_maxcut():
    cfg = OptimizerConfig(max_iterations=100)
    trace = run_qaoa(C4, ORDER_BASELINE, 2, NoiseConfig(rate=0.0), cfg)
    assert all(-1.0 - 1e-9 <= v <= 1.0 + 1e-9 for v in trace.values)
