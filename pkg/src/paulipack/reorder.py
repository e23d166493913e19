"""Turn a coloring into a layered, reordered Hamiltonian.

Within a layer all terms act on pairwise disjoint qubits, so they can share
a schedule slot; layers are emitted in ascending color order and terms keep
their original relative order inside a layer (the within-layer order cannot
affect depth).
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import (
    EdgeColoring,
    VertexColoring,
    build_clique_presentation,
    build_interaction_graph,
    validate_edge_coloring,
    validate_vertex_coloring,
)
from .pauli import Hamiltonian, IsingHamiltonian, PauliString, Term


@dataclass(frozen=True)
class Layer:
    color: int
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class LayeredHamiltonian:
    n_qubits: int
    layers: tuple[Layer, ...]

    @property
    def terms(self) -> tuple[Term, ...]:
        """Flattened term sequence, layer by layer."""
        return tuple(t for layer in self.layers for t in layer.terms)

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def flatten(self) -> Hamiltonian:
        return Hamiltonian(self.n_qubits, self.terms)

    def to_text(self) -> str:
        lines = [f"# qubits {self.n_qubits}"]
        for layer in self.layers:
            lines.append(f"# layer {layer.color}")
            for term in layer.terms:
                lines.append(f"{term.coefficient!r} {term.string.to_sparse_text()}")
        return "\n".join(lines) + "\n"


def reorder_by_vertex_coloring(
    h: Hamiltonian, coloring: VertexColoring
) -> LayeredHamiltonian:
    """Group terms by color, ascending; original order within each layer.

    Identity terms contribute only a global phase and are dropped. The
    coloring must cover every non-identity term and be proper for the
    overlap structure.
    """
    indices = [i for i, t in enumerate(h.terms) if not t.string.is_identity]
    missing = [i for i in indices if i not in coloring]
    if missing:
        raise ValueError(f"no color assigned to term(s) {missing}")
    if not validate_vertex_coloring(build_clique_presentation(h), coloring):
        raise ValueError("coloring is not a proper overlap-graph coloring")
    by_color: dict[int, list[Term]] = {}
    for i in indices:
        by_color.setdefault(coloring[i], []).append(h.terms[i])
    layers = tuple(
        Layer(color, tuple(by_color[color])) for color in sorted(by_color)
    )
    return LayeredHamiltonian(h.n_qubits, layers)


def reorder_by_edge_coloring(
    h: IsingHamiltonian, coloring: EdgeColoring
) -> LayeredHamiltonian:
    """Group Ising terms by the color of their interaction-graph edge.

    Edge (j, k) with j < k maps to the ZZ coupling term, a self-loop (j, j)
    to the field term; coefficients are negated to preserve operator
    equality with the input. Within a layer edges are taken in lexicographic
    order.
    """
    graph = build_interaction_graph(h)
    uncolored = [e for e in graph.edges if e not in coloring]
    if uncolored:
        raise ValueError(f"uncolored edge(s) {uncolored}")
    if not validate_edge_coloring(graph, coloring):
        raise ValueError("coloring is not a proper edge coloring")
    by_color: dict[int, list[Term]] = {}
    for (j, k) in graph.edges:
        if j == k:
            term = Term(-h.fields[j], PauliString({j: "Z"}))
        else:
            term = Term(-h.couplings[(j, k)], PauliString({j: "Z", k: "Z"}))
        by_color.setdefault(coloring[(j, k)], []).append(term)
    layers = tuple(
        Layer(color, tuple(by_color[color])) for color in sorted(by_color)
    )
    return LayeredHamiltonian(h.n_qubits, layers)
