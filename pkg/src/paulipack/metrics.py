"""Cut-distribution quality metrics for max-cut states.

A cut distribution pairs each measured bitstring with its probability and
the number of graph edges it cuts. Bitstrings are written x_1...x_N
(vertex j goes to part x_j) and map to array index sum_j x_j * 2**(j-1).

The numerical support is the set of bitstrings with probability above
SUPPORT_EPS; exact amplitudes carry rounding noise, so a threshold stands
in for exact support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .coloring import InteractionGraph
from .errors import FormatError

SUPPORT_EPS = 1e-12


def index_of_bitstring(bits: str) -> int:
    """Array index of bitstring x_1...x_N (qubit 1 is the first character)."""
    if not bits or any(ch not in "01" for ch in bits):
        raise ValueError(f"bad bitstring {bits!r}")
    return sum(1 << j for j, ch in enumerate(bits) if ch == "1")


def bitstring_of_index(index: int, n: int) -> str:
    return "".join("1" if index >> j & 1 else "0" for j in range(n))


def cut_values(graph: InteractionGraph) -> np.ndarray:
    """Cut size of every bitstring on the graph, as an int64 array of
    length 2**n. Requires a loop-free graph."""
    if graph.has_loops:
        raise ValueError("cut values are only defined for loop-free graphs")
    dim = 1 << graph.n_vertices
    idx = np.arange(dim, dtype=np.uint64)
    total = np.zeros(dim, dtype=np.int64)
    for j, k in graph.edges:
        bits = ((idx >> np.uint64(j - 1)) ^ (idx >> np.uint64(k - 1))) & np.uint64(1)
        total += bits.astype(np.int64)
    return total


@dataclass(frozen=True, eq=False)
class CutDistribution:
    """Probabilities over bitstrings plus their cut values on a graph."""

    graph: InteractionGraph
    probabilities: np.ndarray
    cuts: np.ndarray

    def __post_init__(self):
        dim = 1 << self.graph.n_vertices
        if self.probabilities.shape != (dim,) or self.cuts.shape != (dim,):
            raise ValueError("probability/cut arrays must have length 2**n")
        if np.any(self.probabilities < -SUPPORT_EPS):
            raise ValueError("probabilities must be non-negative")
        if abs(float(self.probabilities.sum()) - 1.0) > 1e-10:
            raise ValueError("probabilities must sum to 1")

    @property
    def n_qubits(self) -> int:
        return self.graph.n_vertices

    def support(self) -> np.ndarray:
        """Indices with probability above the support threshold."""
        return np.nonzero(self.probabilities > SUPPORT_EPS)[0]

    @classmethod
    def from_probabilities(
        cls, graph: InteractionGraph, probabilities: np.ndarray
    ) -> "CutDistribution":
        probs = np.asarray(probabilities, dtype=np.float64)
        return cls(graph, probs, cut_values(graph))

    @classmethod
    def from_mapping(
        cls, graph: InteractionGraph, mapping: dict[str, float]
    ) -> "CutDistribution":
        probs = np.zeros(1 << graph.n_vertices, dtype=np.float64)
        for bits, p in mapping.items():
            if len(bits) != graph.n_vertices:
                raise FormatError(
                    f"bitstring {bits!r} has length {len(bits)}, "
                    f"expected {graph.n_vertices}"
                )
            probs[index_of_bitstring(bits)] += float(p)
        return cls.from_probabilities(graph, probs)

    def to_mapping(self) -> dict[str, float]:
        """JSON-friendly {bitstring: probability} over the support."""
        n = self.n_qubits
        return {
            bitstring_of_index(int(i), n): float(self.probabilities[i])
            for i in self.support()
        }

    def to_json(self) -> str:
        return json.dumps(self.to_mapping(), indent=2, sort_keys=True)


def max_cut_value(d: CutDistribution) -> int:
    """Largest cut among bitstrings in the support."""
    support = d.support()
    if support.size == 0:
        raise ValueError("distribution has empty support")
    return int(d.cuts[support].max())


def prob_of_max(d: CutDistribution) -> float:
    """Total probability of sampling a bitstring that attains the max cut."""
    support = d.support()
    if support.size == 0:
        raise ValueError("distribution has empty support")
    best = d.cuts[support].max()
    return float(d.probabilities[support][d.cuts[support] == best].sum())


def avg_cut_value(d: CutDistribution) -> float:
    """Expected cut value under the full distribution."""
    return float(d.probabilities @ d.cuts)


def pareto_indices(d: CutDistribution) -> list[int]:
    """Support indices not strictly dominated in both probability and cut.

    A bitstring is dominated only if some other support bitstring has both
    strictly higher probability and strictly higher cut; ties never
    dominate.
    """
    support = d.support()
    probs = d.probabilities[support]
    cuts = d.cuts[support]
    order = np.argsort(-probs, kind="stable")
    keep: list[int] = []
    best_cut_above = -1  # max cut among strictly higher probabilities
    i = 0
    while i < len(order):
        j = i
        tier_prob = probs[order[i]]
        while j < len(order) and probs[order[j]] == tier_prob:
            j += 1
        tier = order[i:j]
        for k in tier:
            if int(cuts[k]) >= best_cut_above:
                keep.append(int(support[k]))
        best_cut_above = max(best_cut_above, max(int(cuts[k]) for k in tier))
        i = j
    return sorted(keep)


def pareto_set(d: CutDistribution) -> set[str]:
    """Pareto-optimal bitstrings of the support."""
    n = d.n_qubits
    return {bitstring_of_index(i, n) for i in pareto_indices(d)}


def avg_cut_pareto(d: CutDistribution) -> float:
    """Expected cut conditioned on the Pareto-optimal set."""
    idx = pareto_indices(d)
    if not idx:
        raise ValueError("distribution has empty support")
    probs = d.probabilities[idx]
    return float((probs @ d.cuts[idx]) / probs.sum())


@dataclass(frozen=True)
class HypervolumeConfig:
    """Weight lam > 0 scales cut values against probabilities."""

    lam: float = 1.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lambda must be positive")


def hypervolume(d: CutDistribution, cfg: HypervolumeConfig | None = None) -> float:
    """Area of the union of rectangles [0, P[c]] x [0, lam*cut(c)].

    Computed as a staircase: sweep support points by descending
    probability, accumulating width times the running-max scaled cut.
    """
    lam = (cfg or HypervolumeConfig()).lam
    support = d.support()
    if support.size == 0:
        return 0.0
    probs = d.probabilities[support]
    heights = lam * d.cuts[support].astype(np.float64)
    order = np.argsort(-probs, kind="stable")
    area = 0.0
    prev_x = None
    best_h = 0.0
    for k in order:
        x = float(probs[k])
        if prev_x is not None and x < prev_x:
            area += (prev_x - x) * best_h
        prev_x = x if prev_x is None else min(prev_x, x)
        best_h = max(best_h, float(heights[k]))
    area += prev_x * best_h
    return area


def metrics_summary(
    d: CutDistribution, cfg: HypervolumeConfig | None = None
) -> dict[str, float | int]:
    """All five metrics in one pass, keyed for the CLI."""
    return {
        "max_cut": max_cut_value(d),
        "prob_max": prob_of_max(d),
        "avg_cut": avg_cut_value(d),
        "pareto_size": len(pareto_indices(d)),
        "avg_cut_pareto": avg_cut_pareto(d),
        "hypervolume": hypervolume(d, cfg),
    }
