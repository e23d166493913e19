import random

import pytest

from paulipack.coloring import (
    CliquePresentation,
    InteractionGraph,
    build_clique_presentation,
    build_interaction_graph,
    count_colors,
    find_cd_path,
    find_maximal_fan,
    invert_cd_path,
    misra_gries_color,
    parse_graph,
    rotate_fan,
    saturation_color,
    validate_edge_coloring,
    validate_vertex_coloring,
)
from paulipack.pauli import Hamiltonian, IsingHamiltonian, PauliString, Term, parse_hamiltonian

from oracles import chromatic_number, connected_edge_sets, edge_chromatic_number

TRIANGLE_H = parse_hamiltonian("-1 Z1 Z2\n-1 Z2 Z3\n-1 Z1 Z3", n_qubits=3)


def _random_hamiltonian(rng, n_qubits, n_terms):
    strings = set()
    while len(strings) < n_terms:
        weight = rng.randint(1, min(4, n_qubits))
        qubits = rng.sample(range(1, n_qubits + 1), weight)
        strings.add(PauliString({q: rng.choice("XYZ") for q in qubits}))
    return Hamiltonian(n_qubits, [Term(1.0, s) for s in sorted(strings, key=str)])


def _random_graph(rng, n_vertices, n_edges, loops=False):
    pairs = [
        (j, k) for j in range(1, n_vertices + 1) for k in range(j + 1, n_vertices + 1)
    ]
    edges = rng.sample(pairs, min(n_edges, len(pairs)))
    if loops:
        edges += [(v, v) for v in rng.sample(range(1, n_vertices + 1), rng.randint(0, 3))]
    return InteractionGraph(n_vertices, edges)


# ---------------------------------------------------------------- cliques


def test_clique_presentation_triangle():
    pres = build_clique_presentation(TRIANGLE_H)
    assert pres.by_qubit == {1: {0, 2}, 2: {0, 1}, 3: {1, 2}}


def test_clique_presentation_disjoint_and_identity():
    h = parse_hamiltonian("1 Z1\n1 Z2", n_qubits=2)
    pres = build_clique_presentation(h)
    assert pres.by_qubit == {1: {0}, 2: {1}}
    only_identity = Hamiltonian(2, [Term(2.0, PauliString())])
    assert build_clique_presentation(only_identity).by_qubit == {}


# ------------------------------------------------------------- saturation


def test_saturation_triangle_needs_three_colors():
    pres = build_clique_presentation(TRIANGLE_H)
    coloring = saturation_color(pres)
    assert validate_vertex_coloring(pres, coloring)
    assert count_colors(coloring) == 3 == chromatic_number([0, 1, 2], [(0, 1), (1, 2), (0, 2)])


def test_saturation_edgeless():
    h = parse_hamiltonian("1 Z1\n1 Z2\n1 Z3", n_qubits=3)
    assert saturation_color(build_clique_presentation(h)) == {0: 0, 1: 0, 2: 0}


def test_saturation_single_term():
    h = parse_hamiltonian("1 Z1", n_qubits=1)
    assert saturation_color(build_clique_presentation(h)) == {0: 0}


def test_saturation_loop_invariants():
    """Partial coloring stays valid and components finish one at a time."""
    rng = random.Random(20)
    for _ in range(10):
        h = _random_hamiltonian(rng, 12, 24)
        pres = build_clique_presentation(h)
        components = _components(pres)
        snapshots = []
        saturation_color(pres, step_hook=snapshots.append)
        for snap in snapshots:
            assert _partial_vertex_valid(pres, snap)
            touched = [
                comp
                for comp in components
                if any(v in snap for v in comp) and not all(v in snap for v in comp)
            ]
            assert len(touched) <= 1


def _components(pres):
    remaining = set(pres.vertices)
    comps = []
    while remaining:
        stack = [remaining.pop()]
        comp = set(stack)
        while stack:
            v = stack.pop()
            for w in pres.neighbors(v):
                if w in remaining:
                    remaining.remove(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _partial_vertex_valid(pres, coloring):
    for members in pres.by_qubit.values():
        seen = [coloring[v] for v in members if v in coloring]
        if len(set(seen)) != len(seen):
            return False
    return True


def test_saturation_determinism():
    rng = random.Random(8)
    for _ in range(5):
        h = _random_hamiltonian(rng, 16, 40)
        pres = build_clique_presentation(h)
        assert saturation_color(pres) == saturation_color(pres)


# --------------------------------------------------------- interaction graph


def test_build_interaction_graph():
    triangle = IsingHamiltonian(3, couplings={(1, 2): 1.0, (2, 3): 1.0, (1, 3): 1.0})
    g = build_interaction_graph(triangle)
    assert g.edges == ((1, 2), (1, 3), (2, 3))
    field_only = IsingHamiltonian(3, fields={2: 1.0})
    assert build_interaction_graph(field_only).edges == ((2, 2),)
    assert build_interaction_graph(IsingHamiltonian(3)).edges == ()


def test_graph_text_roundtrip():
    g = InteractionGraph(5, [(1, 2), (3, 3), (2, 5)])
    again = parse_graph(g.to_text())
    assert again == g
    inferred = parse_graph("1 2\n2 5\n3 3\n")
    assert inferred.n_vertices == 5


# ------------------------------------------------------------ fans and paths


def test_fan_of_size_one_when_no_colored_edges():
    g = InteractionGraph(3, [(1, 2), (1, 3)])
    fan = find_maximal_fan(g, {}, (1, 2))
    assert fan.center == 1 and fan.endpoints == (2,)


def test_fan_extends_when_color_free_on_endpoint():
    g = InteractionGraph(4, [(1, 2), (1, 3), (1, 4)])
    coloring = {(1, 3): 0}
    fan = find_maximal_fan(g, coloring, (1, 2))
    assert fan.endpoints == (2, 3)


def test_fan_tie_break_lowest_endpoint():
    g = InteractionGraph(4, [(1, 2), (1, 3), (1, 4)])
    coloring = {(1, 3): 0, (1, 4): 1}
    fan = find_maximal_fan(g, coloring, (1, 2))
    # both (1,3) and (1,4) extend a bare endpoint; lowest endpoint first
    assert fan.endpoints[1] == 3
    again = find_maximal_fan(g, coloring, (1, 2))
    assert again == fan


def test_fan_rejects_colored_or_loop_start():
    g = InteractionGraph(3, [(1, 2), (1, 1)])
    with pytest.raises(ValueError):
        find_maximal_fan(g, {(1, 2): 0}, (1, 2))
    with pytest.raises(ValueError):
        find_maximal_fan(g, {}, (1, 1))


def test_invert_single_edge_path():
    g = InteractionGraph(2, [(1, 2)])
    coloring = {(1, 2): 0}
    path = find_cd_path(g, coloring, 1, 1, 0)
    assert path.edges == ((1, 2),)
    out = invert_cd_path(coloring, path)
    assert out == {(1, 2): 1}


def test_invert_three_edge_alternating_path():
    g = InteractionGraph(4, [(1, 2), (2, 3), (3, 4)])
    coloring = {(1, 2): 0, (2, 3): 1, (3, 4): 0}
    path = find_cd_path(g, coloring, 1, 1, 0)
    assert set(path.edges) == {(1, 2), (2, 3), (3, 4)}
    out = invert_cd_path(coloring, path)
    assert out == {(1, 2): 1, (2, 3): 0, (3, 4): 1}
    assert validate_edge_coloring(g, out)


def test_empty_path_changes_nothing():
    g = InteractionGraph(3, [(1, 2), (2, 3)])
    coloring = {(1, 2): 0, (2, 3): 1}
    path = find_cd_path(g, coloring, 1, 2, 3)
    assert path.edges == ()
    assert invert_cd_path(coloring, path) == coloring


def test_rotate_fan_examples():
    g = InteractionGraph(4, [(1, 2), (1, 3), (1, 4)])
    coloring = {(1, 3): 5}
    fan = find_maximal_fan(g, coloring, (1, 2))
    assert fan.endpoints == (2, 3)
    out = rotate_fan(coloring, fan)
    assert out == {(1, 2): 5}
    assert len(out) == len(coloring)  # colored-edge count preserved
    size_one = find_maximal_fan(g, {}, (1, 2))
    assert rotate_fan({}, size_one) == {}


# ------------------------------------------------------------- misra-gries


def test_misra_gries_path():
    g = InteractionGraph(3, [(1, 2), (2, 3)])
    coloring = misra_gries_color(g)
    assert validate_edge_coloring(g, coloring)
    assert count_colors(coloring) == 2 == edge_chromatic_number(g.edges)


def test_misra_gries_star():
    g = InteractionGraph(4, [(1, 2), (1, 3), (1, 4)])
    coloring = misra_gries_color(g)
    assert validate_edge_coloring(g, coloring)
    assert count_colors(coloring) == 3 == edge_chromatic_number(g.edges)


def test_misra_gries_triangle():
    g = InteractionGraph(3, [(1, 2), (2, 3), (1, 3)])
    coloring = misra_gries_color(g)
    assert validate_edge_coloring(g, coloring)
    assert count_colors(coloring) == 3 == edge_chromatic_number(g.edges)


def test_misra_gries_self_loops():
    g = InteractionGraph(3, [(1, 2), (2, 3), (2, 2), (3, 3)])
    coloring = misra_gries_color(g)
    assert validate_edge_coloring(g, coloring)
    # loop at 2 sees both path colors, loop at 3 one
    assert coloring[(2, 2)] == 2


def test_misra_gries_validity_randomized():
    rng = random.Random(42)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(2, 24), rng.randint(1, 60), loops=rng.random() < 0.4)
        coloring = misra_gries_color(g, validate_steps=True)
        assert validate_edge_coloring(g, coloring)


def test_misra_gries_vizing_bound_loop_free():
    rng = random.Random(7)
    for _ in range(200):
        g = _random_graph(rng, rng.randint(2, 20), rng.randint(1, 40))
        coloring = misra_gries_color(g)
        assert validate_edge_coloring(g, coloring)
        assert count_colors(coloring) <= g.max_degree() + 1


def test_misra_gries_determinism():
    rng = random.Random(9)
    for _ in range(5):
        g = _random_graph(rng, 14, 30, loops=True)
        assert misra_gries_color(g) == misra_gries_color(g)


# --------------------------------------------------- exhaustive small graphs


def test_exhaustive_small_graphs_against_oracles():
    """On every connected graph with <= 4 edges: Misra-Gries stays within
    one color of the chromatic index, saturation within one of the
    chromatic number of the overlap graph (equality on complete/edgeless).

    The 5-edge tier runs in the acceptance suite.
    """
    for n_vertices, edges in connected_edge_sets(4):
        g = InteractionGraph(n_vertices, edges)
        ec = misra_gries_color(g)
        assert validate_edge_coloring(g, ec)
        assert count_colors(ec) <= edge_chromatic_number(edges) + 1

        pres = _presentation_from_graph(edges)
        vc = saturation_color(pres)
        assert validate_vertex_coloring(pres, vc)
        chi = chromatic_number(sorted({v for e in edges for v in e}), edges)
        assert chi <= count_colors(vc) <= chi + 1


def _presentation_from_graph(edges):
    """Clique presentation whose overlap graph is exactly the given graph:
    one 'qubit' per edge, spanning its two endpoints."""
    return CliquePresentation(
        n_terms=max(v for e in edges for v in e),
        by_qubit={i: set(e) for i, e in enumerate(edges, start=1)},
    )


def test_saturation_complete_graph_exact():
    edges = [(a, b) for a in range(1, 6) for b in range(a + 1, 6)]
    pres = _presentation_from_graph(edges)
    coloring = saturation_color(pres)
    assert count_colors(coloring) == 5


def test_count_colors_and_invalid_detection():
    g = InteractionGraph(3, [(1, 2), (2, 3), (1, 3)])
    two_colors = {(1, 2): 0, (2, 3): 1, (1, 3): 0}
    assert not validate_edge_coloring(g, two_colors)
    assert count_colors({}) == 0
    assert validate_edge_coloring(InteractionGraph(0), {})
