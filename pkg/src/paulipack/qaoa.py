"""Classical outer loop: derivative-free maximization of noisy AE/e.

The objective for a max-cut instance is the average energy per edge of the
ansatz state, damped by (1-rate)**depth where depth is the scheduled depth
of the full ansatz under the chosen term order. The ideal state itself is
order-independent (the cost terms commute), so term order influences the
result only through that damping factor.

The optimizer is a plain Nelder-Mead simplex with fixed coefficients
(reflect 1, expand 2, contract 0.5, shrink 0.5). Its accept/reject
decisions compare objective values, so a positive rescaling of the
objective leaves the search trajectory unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coloring import (
    InteractionGraph,
    build_clique_presentation,
    build_interaction_graph,
    count_colors,
    misra_gries_color,
    saturation_color,
)
from .pauli import IsingHamiltonian, PauliString
from .reorder import reorder_by_edge_coloring, reorder_by_vertex_coloring
from .simulator import (
    MAX_QUBITS,
    NoiseConfig,
    QaoaParams,
    _qaoa_state_with_table,
    ising_energy_table,
)
from . import _kernels as kernels
from .trotter import (
    ORDER_BASELINE,
    ORDER_MISRA_GRIES,
    ORDER_SATURATION,
    CostModel,
    GateSequence,
    RotationBlock,
    UNIT_COST,
    schedule_depth,
)


def ae_per_edge(energy: float, edge_count: int) -> float:
    """Average energy per edge."""
    if edge_count < 1:
        raise ValueError("edge count must be >= 1")
    return energy / edge_count


def maxcut_ising(graph: InteractionGraph) -> IsingHamiltonian:
    """Cost operator of the max-cut instance: -sum_{(j,k) in E} Z_j Z_k."""
    if graph.has_loops:
        raise ValueError("max-cut instances are loop-free graphs")
    if not graph.edges:
        raise ValueError("max-cut instance needs at least one edge")
    return IsingHamiltonian(
        graph.n_vertices, couplings={e: 1.0 for e in graph.edges}
    )


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 200  # objective-evaluation budget
    initial_scale: float = 0.25
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class EnergyTrace:
    """Per-evaluation objective values with their running maximum."""

    values: tuple[float, ...]
    cumulative_max: tuple[float, ...]
    best_params: tuple[float, ...]
    best_value: float

    @classmethod
    def from_evaluations(
        cls, values: list[float], points: list[np.ndarray]
    ) -> "EnergyTrace":
        best_i = 0
        cumulative = []
        for i, v in enumerate(values):
            if v > values[best_i]:
                best_i = i
            cumulative.append(values[best_i])
        return cls(
            values=tuple(values),
            cumulative_max=tuple(cumulative),
            best_params=tuple(float(x) for x in points[best_i]),
            best_value=values[best_i],
        )


class _BudgetExhausted(Exception):
    pass


def nelder_mead_maximize(
    objective, x0, cfg: OptimizerConfig
) -> tuple[np.ndarray, EnergyTrace]:
    """Simplex search for a maximum, recording every evaluation.

    Stops when the spread of simplex objective values drops below the
    tolerance or the evaluation budget runs out. Deterministic for a
    deterministic objective.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.ndim != 1 or not np.all(np.isfinite(x0)):
        raise ValueError("x0 must be a finite 1-D vector")
    dim = x0.size
    values: list[float] = []
    points: list[np.ndarray] = []

    def f(x: np.ndarray) -> float:
        if len(values) >= cfg.max_iterations:
            raise _BudgetExhausted
        v = float(objective(x))
        if not math.isfinite(v):
            raise RuntimeError(f"objective returned non-finite value {v!r} at {x!r}")
        values.append(v)
        points.append(x.copy())
        return v

    alpha, gamma, rho, sigma = 1.0, 2.0, 0.5, 0.5
    simplex = [x0]
    for i in range(dim):
        step = np.zeros(dim)
        step[i] = cfg.initial_scale
        simplex.append(x0 + step)
    try:
        scores = [f(x) for x in simplex]
        while True:
            order = sorted(range(dim + 1), key=lambda i: -scores[i])
            simplex = [simplex[i] for i in order]
            scores = [scores[i] for i in order]
            if scores[0] - scores[-1] < cfg.tolerance:
                break
            centroid = np.mean(simplex[:-1], axis=0)
            worst = simplex[-1]
            reflected = centroid + alpha * (centroid - worst)
            r_score = f(reflected)
            if r_score > scores[0]:
                expanded = centroid + gamma * (centroid - worst)
                e_score = f(expanded)
                if e_score > r_score:
                    simplex[-1], scores[-1] = expanded, e_score
                else:
                    simplex[-1], scores[-1] = reflected, r_score
            elif r_score > scores[-2]:
                simplex[-1], scores[-1] = reflected, r_score
            else:
                contracted = centroid + rho * (worst - centroid)
                c_score = f(contracted)
                if c_score > scores[-1]:
                    simplex[-1], scores[-1] = contracted, c_score
                else:
                    best = simplex[0]
                    for i in range(1, dim + 1):
                        simplex[i] = best + sigma * (simplex[i] - best)
                        scores[i] = f(simplex[i])
    except _BudgetExhausted:
        pass
    trace = EnergyTrace.from_evaluations(values, points)
    return np.asarray(trace.best_params), trace


@dataclass(frozen=True)
class AnsatzDepthInfo:
    """Scheduled depth of the p-layer ansatz under one term order."""

    order: str
    total_depth: int
    cost_layer_depth: int
    mixer_depth: int
    colors: int | None


def ordered_cost_terms(graph: InteractionGraph, order: str):
    """Cost-Hamiltonian terms in the order implied by `order`.

    Returns (terms, colors_used); colors_used is None for the baseline,
    which keeps the canonical (sorted-edge) order of the instance.
    """
    cost = maxcut_ising(graph)
    if order == ORDER_BASELINE:
        return cost.to_hamiltonian().terms, None
    if order == ORDER_SATURATION:
        h = cost.to_hamiltonian()
        coloring = saturation_color(build_clique_presentation(h))
        return reorder_by_vertex_coloring(h, coloring).terms, count_colors(coloring)
    if order == ORDER_MISRA_GRIES:
        coloring = misra_gries_color(build_interaction_graph(cost))
        return reorder_by_edge_coloring(cost, coloring).terms, count_colors(coloring)
    raise ValueError(f"unknown order {order!r}")


def ansatz_depth(
    graph: InteractionGraph, order: str, p_layers: int, cost_model: CostModel = UNIT_COST
) -> AnsatzDepthInfo:
    """p * (scheduled cost-layer sweep depth) + p * (mixer block depth).

    The mixer is a layer of single-qubit X rotations, so its depth is one
    block duration regardless of order; the angle does not affect depth.
    """
    if p_layers < 1:
        raise ValueError("p_layers must be >= 1")
    terms, colors = ordered_cost_terms(graph, order)
    sweep = GateSequence(
        graph.n_vertices, tuple(RotationBlock(t.string, t.coefficient) for t in terms)
    )
    cost_depth = schedule_depth(sweep, cost_model).total_depth
    mixer_depth = cost_model.duration(RotationBlock(PauliString({1: "X"}), 1.0))
    return AnsatzDepthInfo(
        order=order,
        total_depth=p_layers * (cost_depth + mixer_depth),
        cost_layer_depth=cost_depth,
        mixer_depth=mixer_depth,
        colors=colors,
    )


def ramp_initial_params(p_layers: int) -> np.ndarray:
    """Linear-ramp start: mixing fades out while the cost angle ramps up."""
    ks = (np.arange(p_layers) + 0.5) / p_layers
    betas = (1.0 - ks) * 0.5
    gammas = ks * 0.5
    return np.concatenate([betas, gammas])


def run_qaoa(
    instance: InteractionGraph,
    order: str,
    p_layers: int,
    noise: NoiseConfig,
    cfg: OptimizerConfig,
) -> EnergyTrace:
    """Maximize noisy AE/e over the ansatz parameters for one instance.

    The energy table is built once in canonical term order, so the ideal
    state is identical across orders; only the damping factor, derived
    from the scheduled depth of the ordered circuit, differs.
    """
    if instance.n_vertices > MAX_QUBITS:
        raise ValueError(f"instance exceeds the {MAX_QUBITS}-qubit cap")
    cost = maxcut_ising(instance)
    table = ising_energy_table(cost)
    edge_count = len(cost.couplings)
    depth_info = ansatz_depth(instance, order, p_layers, noise.cost)
    damping = noise.damping(depth_info.total_depth)
    n = instance.n_vertices

    def objective(x: np.ndarray) -> float:
        params = QaoaParams.from_vector(x)
        state = _qaoa_state_with_table(params, n, table)
        energy = kernels.expectation_diagonal(state.amplitudes, table)
        return damping * ae_per_edge(energy, edge_count)

    _, trace = nelder_mead_maximize(objective, ramp_initial_params(p_layers), cfg)
    return trace


def ae_gain(trace_reordered: EnergyTrace, trace_baseline: EnergyTrace) -> float:
    """Best noisy AE/e of the reordered run minus the baseline's."""
    if not trace_reordered.values or not trace_baseline.values:
        raise ValueError("traces must contain at least one evaluation")
    return trace_reordered.best_value - trace_baseline.best_value
