"""Graph encodings of Pauli Hamiltonians and the two greedy colorings.

A general Hamiltonian maps to its overlap graph: one vertex per term, one
edge per overlapping pair. Because all terms touching a given qubit form a
clique, the graph is presented as per-qubit vertex sets instead of an edge
list, and the saturation (DSATUR-style) vertex coloring runs directly on
that presentation.

An Ising Hamiltonian maps to the finer interaction graph: one vertex per
qubit, one edge per ZZ coupling, one self-loop per Z field. Terms are edges
there, and a Misra-Gries pass (extended to color self-loops greedily at the
end) produces an edge coloring with at most max-degree + 1 colors on the
loop-free part.

All tie-breaks are fixed (lowest index first, smallest free color), so both
colorings are deterministic functions of their input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import FormatError, InvariantError
from .pauli import Hamiltonian, IsingHamiltonian

Edge = tuple[int, int]
VertexColoring = dict[int, int]
EdgeColoring = dict[Edge, int]

_QUBITS_HEADER = re.compile(r"^#\s*vertices\s+([0-9]+)\s*$")


def _mex(taken: Iterable[int]) -> int:
    """Smallest non-negative integer not in `taken`."""
    used = set(taken)
    c = 0
    while c in used:
        c += 1
    return c


class CliquePresentation:
    """Overlap graph presented as per-qubit cliques.

    Vertices are the indices of non-identity terms in the source
    Hamiltonian; ``by_qubit[q]`` is the set of vertices acting on qubit q.
    """

    __slots__ = ("n_terms", "by_qubit", "supports", "vertices")

    def __init__(self, n_terms: int, by_qubit: dict[int, Iterable[int]]):
        self.n_terms = n_terms
        self.by_qubit: dict[int, frozenset[int]] = {
            q: frozenset(members) for q, members in by_qubit.items() if members
        }
        supports: dict[int, set[int]] = {}
        for q, members in self.by_qubit.items():
            for v in members:
                supports.setdefault(v, set()).add(q)
        self.supports: dict[int, frozenset[int]] = {
            v: frozenset(qs) for v, qs in supports.items()
        }
        self.vertices: tuple[int, ...] = tuple(sorted(self.supports))

    def neighbors(self, v: int) -> set[int]:
        out: set[int] = set()
        for q in self.supports.get(v, ()):
            out.update(self.by_qubit[q])
        out.discard(v)
        return out


def build_clique_presentation(h: Hamiltonian) -> CliquePresentation:
    """Index the Hamiltonian's terms by the qubits they act on.

    Identity terms carry no overlap information and are excluded.
    """
    by_qubit: dict[int, set[int]] = {}
    for idx, term in enumerate(h.terms):
        for q in term.string.qubits:
            by_qubit.setdefault(q, set()).add(idx)
    return CliquePresentation(h.n_terms, by_qubit)


def saturation_color(
    g: CliquePresentation,
    step_hook: Callable[[VertexColoring], None] | None = None,
) -> VertexColoring:
    """Greedy vertex coloring, most saturated fringe vertex first.

    Each connected component is seeded with color 0 at its lowest-index
    vertex; afterwards the fringe vertex seeing the most distinct neighbor
    colors (lowest index on ties) receives the smallest color absent from
    its neighborhood. `step_hook`, if given, is called with a snapshot of
    the partial coloring after every assignment.
    """
    colors: VertexColoring = {}
    uncolored = set(g.vertices)
    while uncolored:
        seed = min(uncolored)
        colors[seed] = 0
        uncolored.remove(seed)
        if step_hook is not None:
            step_hook(dict(colors))
        fringe: dict[int, set[int]] = {}
        for w in g.neighbors(seed):
            if w in uncolored:
                fringe[w] = {0}
        while fringe:
            v = max(fringe, key=lambda w: (len(fringe[w]), -w))
            c = _mex(fringe[v])
            colors[v] = c
            uncolored.remove(v)
            del fringe[v]
            if step_hook is not None:
                step_hook(dict(colors))
            for w in g.neighbors(v):
                if w in uncolored:
                    fringe.setdefault(w, set()).add(c)
    return colors


def validate_vertex_coloring(g: CliquePresentation, coloring: VertexColoring) -> bool:
    """Total on all vertices and distinct within every per-qubit clique."""
    if any(v not in coloring for v in g.vertices):
        return False
    for members in g.by_qubit.values():
        seen = [coloring[v] for v in members]
        if len(set(seen)) != len(seen):
            return False
    return True


def count_colors(coloring: dict) -> int:
    return len(set(coloring.values()))


class InteractionGraph:
    """Simple undirected graph on vertices 1..n, self-loops allowed.

    Edges are normalized to (j, k) with j <= k; j == k encodes a self-loop.
    """

    __slots__ = ("n_vertices", "edges", "_edgeset", "_incident")

    def __init__(self, n_vertices: int, edges: Iterable[Edge] = ()):
        if n_vertices < 0:
            raise ValueError("n_vertices must be >= 0")
        normalized = set()
        for j, k in edges:
            if not (1 <= j <= n_vertices and 1 <= k <= n_vertices):
                raise ValueError(f"edge ({j}, {k}) outside [1, {n_vertices}]")
            normalized.add((min(j, k), max(j, k)))
        self.n_vertices = n_vertices
        self.edges: tuple[Edge, ...] = tuple(sorted(normalized))
        self._edgeset = frozenset(self.edges)
        incident: dict[int, list[Edge]] = {v: [] for v in range(1, n_vertices + 1)}
        for e in self.edges:
            incident[e[0]].append(e)
            if e[1] != e[0]:
                incident[e[1]].append(e)
        self._incident = {v: tuple(es) for v, es in incident.items()}

    @property
    def nonloop_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e[0] != e[1])

    @property
    def loop_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e[0] == e[1])

    @property
    def has_loops(self) -> bool:
        return any(e[0] == e[1] for e in self.edges)

    def has_edge(self, j: int, k: int) -> bool:
        return (min(j, k), max(j, k)) in self._edgeset

    def incident(self, v: int) -> tuple[Edge, ...]:
        return self._incident.get(v, ())

    def neighbors(self, v: int) -> list[int]:
        out = []
        for j, k in self.incident(v):
            if j != k:
                out.append(k if j == v else j)
        return sorted(out)

    def degree(self, v: int) -> int:
        """Number of incident non-loop edges."""
        return sum(1 for e in self.incident(v) if e[0] != e[1])

    def max_degree(self) -> int:
        if self.n_vertices == 0:
            return 0
        return max(self.degree(v) for v in range(1, self.n_vertices + 1))

    def is_connected(self) -> bool:
        """True iff every vertex lies in one component (n <= 1 counts)."""
        if self.n_vertices <= 1:
            return True
        parent = list(range(self.n_vertices + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j, k in self.edges:
            parent[find(j)] = find(k)
        roots = {find(v) for v in range(1, self.n_vertices + 1)}
        return len(roots) == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InteractionGraph)
            and self.n_vertices == other.n_vertices
            and self.edges == other.edges
        )

    def __repr__(self) -> str:
        return f"InteractionGraph(n_vertices={self.n_vertices}, n_edges={len(self.edges)})"

    def to_text(self) -> str:
        lines = [f"# vertices {self.n_vertices}"]
        lines.extend(f"{j} {k}" for j, k in self.edges)
        return "\n".join(lines) + "\n"


def parse_graph(text: str, n_vertices: int | None = None) -> InteractionGraph:
    """Parse the `j k` edge-list format (1-based, j == k for a self-loop)."""
    declared = n_vertices
    edges: list[Edge] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            m = _QUBITS_HEADER.match(stripped)
            if m and declared is None:
                declared = int(m.group(1))
            continue
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 2:
            raise FormatError(f"line {lineno}: expected 'j k'")
        try:
            j, k = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad vertex index") from exc
        if j < 1 or k < 1:
            raise FormatError(f"line {lineno}: vertex indices are 1-based")
        edges.append((j, k))
    n = declared
    if n is None:
        n = max((max(e) for e in edges), default=0)
    return InteractionGraph(n, edges)


def build_interaction_graph(h: IsingHamiltonian) -> InteractionGraph:
    """One edge per nonzero coupling, one self-loop per nonzero field."""
    edges: list[Edge] = list(h.couplings)
    edges.extend((j, j) for j in h.fields)
    return InteractionGraph(h.n_qubits, edges)


@dataclass(frozen=True)
class Fan:
    """Rotatable edge sequence (v,w_1), ..., (v,w_k) around a center vertex.

    The first edge is uncolored, the rest are colored, the endpoints are
    distinct, and each edge's color is free on the previous endpoint.
    """

    center: int
    endpoints: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.endpoints)

    def edge(self, index: int) -> Edge:
        w = self.endpoints[index]
        return (min(self.center, w), max(self.center, w))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self.edge(i) for i in range(self.size))

    def prefix(self, size: int) -> "Fan":
        return Fan(self.center, self.endpoints[:size])


@dataclass(frozen=True)
class CdPath:
    """Maximal path (or alternating cycle) of edges colored c or d."""

    c: int
    d: int
    edges: tuple[Edge, ...]


def _colors_at(g: InteractionGraph, coloring: EdgeColoring, v: int) -> set[int]:
    return {coloring[e] for e in g.incident(v) if e in coloring}


def _smallest_free(g: InteractionGraph, coloring: EdgeColoring, v: int) -> int:
    return _mex(_colors_at(g, coloring, v))


def _color_is_free(g: InteractionGraph, coloring: EdgeColoring, v: int, c: int) -> bool:
    return all(coloring.get(e) != c for e in g.incident(v))


def find_maximal_fan(
    g: InteractionGraph, coloring: EdgeColoring, e1: Edge
) -> Fan:
    """Grow a fan from the uncolored edge e1 = (center, w1).

    Repeatedly appends the colored edge (center, w) with the lowest endpoint
    whose color is free on the current last endpoint, until no colored edge
    qualifies. Self-loops never participate.
    """
    v, w1 = e1
    if v == w1:
        raise ValueError("self-loops cannot start a fan")
    if (min(v, w1), max(v, w1)) in coloring:
        raise ValueError("the first fan edge must be uncolored")
    endpoints = [w1]
    used = {w1}
    while True:
        last = endpoints[-1]
        last_colors = _colors_at(g, coloring, last)
        candidate = None
        for w in g.neighbors(v):
            if w in used or w == v:
                continue
            c = coloring.get((min(v, w), max(v, w)))
            if c is None or c in last_colors:
                continue
            candidate = w
            break
        if candidate is None:
            return Fan(v, tuple(endpoints))
        endpoints.append(candidate)
        used.add(candidate)


def _walk_alternating(
    g: InteractionGraph,
    coloring: EdgeColoring,
    start: int,
    first_color: int,
    second_color: int,
    visited: set[Edge],
) -> list[Edge]:
    """Follow the unique alternating-color walk from `start`."""
    path: list[Edge] = []
    u = start
    want = first_color
    while True:
        step = None
        for e in g.incident(u):
            if e[0] == e[1] or e in visited:
                continue
            if coloring.get(e) == want:
                step = e
                break
        if step is None:
            return path
        visited.add(step)
        path.append(step)
        u = step[1] if step[0] == u else step[0]
        want = second_color if want == first_color else first_color


def find_cd_path(
    g: InteractionGraph, coloring: EdgeColoring, v: int, c: int, d: int
) -> CdPath:
    """Maximal path of c/d-colored edges through v (empty if none touch v).

    In a valid partial coloring at most one c-edge and one d-edge meet v,
    so the walk in each direction is unique; a closed alternating cycle is
    returned as the full cycle edge list.
    """
    visited: set[Edge] = set()
    via_d = _walk_alternating(g, coloring, v, d, c, visited)
    via_c = _walk_alternating(g, coloring, v, c, d, visited)
    return CdPath(c, d, tuple(reversed(via_c)) + tuple(via_d))


def invert_cd_path(coloring: EdgeColoring, path: CdPath) -> EdgeColoring:
    """Swap colors c and d on every edge of the path; all else unchanged."""
    out = dict(coloring)
    for e in path.edges:
        current = coloring.get(e)
        if current == path.c:
            out[e] = path.d
        elif current == path.d:
            out[e] = path.c
        else:
            raise ValueError(f"edge {e} is not colored {path.c} or {path.d}")
    return out


def rotate_fan(coloring: EdgeColoring, fan: Fan) -> EdgeColoring:
    """Shift each fan edge's color onto its predecessor; uncolor the last.

    The number of colored edges is unchanged, and validity is preserved by
    the fan conditions.
    """
    out = dict(coloring)
    if fan.size == 1:
        return out
    edges = fan.edges
    for j in range(fan.size - 1):
        out[edges[j]] = coloring[edges[j + 1]]
    del out[edges[-1]]
    return out


def _largest_rotatable_prefix(
    g: InteractionGraph, coloring: EdgeColoring, fan: Fan, d: int
) -> int:
    """Largest l such that the l-prefix is still a valid fan and d is free
    on its last endpoint. At least l = 1 qualifies whenever d is free on
    the first endpoint."""
    valid_up_to = 1
    prefix_ok = [True]
    for j in range(1, fan.size):
        color = coloring.get(fan.edge(j))
        ok = color is not None and _color_is_free(
            g, coloring, fan.endpoints[j - 1], color
        )
        prefix_ok.append(prefix_ok[-1] and ok)
        if prefix_ok[-1]:
            valid_up_to = j + 1
    for size in range(valid_up_to, 0, -1):
        if prefix_ok[size - 1] and _color_is_free(
            g, coloring, fan.endpoints[size - 1], d
        ):
            return size
    return 0


def misra_gries_color(
    g: InteractionGraph,
    validate_steps: bool = False,
    step_hook: Callable[[InteractionGraph, EdgeColoring, Edge], None] | None = None,
) -> EdgeColoring:
    """Edge coloring via fans and alternating-path inversions.

    Non-loop edges are processed in lexicographic order; each round builds a
    maximal fan around the edge's lower endpoint, inverts the alternating
    path between the smallest color free at the center and the smallest
    free at the fan's last endpoint, then rotates the largest prefix fan
    that can legally receive the latter color. Self-loops are colored last
    with the smallest color unused at their vertex.

    With `validate_steps`, the partial coloring is re-validated after every
    inversion and rotation. `step_hook(g, coloring, next_edge)` is called
    with a snapshot before each round.
    """
    coloring: EdgeColoring = {}
    for e1 in sorted(g.nonloop_edges):
        if step_hook is not None:
            step_hook(g, dict(coloring), e1)
        v, w1 = e1
        fan = find_maximal_fan(g, coloring, (v, w1))
        c = _smallest_free(g, coloring, v)
        d = _smallest_free(g, coloring, fan.endpoints[-1])
        path = find_cd_path(g, coloring, v, c, d)
        if path.edges:
            coloring = invert_cd_path(coloring, path)
            if validate_steps and not validate_edge_coloring(
                g, coloring, partial=True
            ):
                raise InvariantError("path inversion broke the partial coloring")
        size = _largest_rotatable_prefix(g, coloring, fan, d)
        if size < 1:
            raise InvariantError("no rotatable fan prefix; coloring state corrupt")
        prefix = fan.prefix(size)
        coloring = rotate_fan(coloring, prefix)
        if validate_steps and not validate_edge_coloring(g, coloring, partial=True):
            raise InvariantError("fan rotation broke the partial coloring")
        coloring[prefix.edges[-1]] = d
        if validate_steps and not validate_edge_coloring(g, coloring, partial=True):
            raise InvariantError("final edge assignment broke the partial coloring")
    for j, _ in sorted(g.loop_edges):
        coloring[(j, j)] = _smallest_free(g, coloring, j)
    return coloring


def validate_edge_coloring(
    g: InteractionGraph, coloring: EdgeColoring, partial: bool = False
) -> bool:
    """No two incident edges share a color; total unless `partial`."""
    if not partial and any(e not in coloring for e in g.edges):
        return False
    for e in coloring:
        if e not in g._edgeset:
            return False
    for v in range(1, g.n_vertices + 1):
        seen = [coloring[e] for e in g.incident(v) if e in coloring]
        if len(set(seen)) != len(seen):
            return False
    return True
