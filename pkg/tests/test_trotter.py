import math
import random

import numpy as np
import pytest

from paulipack.pauli import Hamiltonian, PauliString, Term, parse_hamiltonian
from paulipack.trotter import (
    LADDER_COST,
    S2_COEFFICIENT,
    UNIT_COST,
    CostModel,
    GateSequence,
    RotationBlock,
    depth_reduction,
    expand_formula,
    reorder_hamiltonian,
    s2_sweep,
    schedule_depth,
    suzuki1,
    suzuki4_single_timestep,
)

from oracles import dense_evolution, dense_sequence_unitary

TRIANGLE_H = parse_hamiltonian("-1 Z1 Z2\n-1 Z2 Z3\n-1 Z1 Z3", n_qubits=3)
C4_LISTED = Hamiltonian(
    4,
    [
        Term(-1.0, PauliString({1: "Z", 2: "Z"})),
        Term(-1.0, PauliString({2: "Z", 3: "Z"})),
        Term(-1.0, PauliString({3: "Z", 4: "Z"})),
        Term(-1.0, PauliString({1: "Z", 4: "Z"})),
    ],
)


def _random_h(rng, n_qubits, n_terms, axes="XYZ"):
    strings = set()
    while len(strings) < n_terms:
        weight = rng.randint(1, min(3, n_qubits))
        qubits = rng.sample(range(1, n_qubits + 1), weight)
        strings.add(PauliString({q: rng.choice(axes) for q in qubits}))
    return Hamiltonian(
        n_qubits, [Term(rng.uniform(-1.5, 1.5), s) for s in sorted(strings, key=str)]
    )


# ------------------------------------------------------------------ suzuki1


def test_suzuki1_single_term():
    h = parse_hamiltonian("1 Z1", n_qubits=1)
    seq = suzuki1(h, 1.0, 3)
    assert len(seq) == 3
    assert all(abs(b.angle - 1 / 3) < 1e-15 for b in seq)


def test_suzuki1_order_and_count():
    seq = suzuki1(TRIANGLE_H, 0.7, 1)
    assert [b.string for b in seq] == [t.string for t in TRIANGLE_H.terms]
    assert len(suzuki1(TRIANGLE_H, 0.7, 4)) == 12


def test_suzuki1_exact_for_commuting_terms():
    h = parse_hamiltonian("0.8 Z1\n-0.3 Z1 Z2", n_qubits=2)
    for k in (1, 2, 5):
        u = dense_sequence_unitary(suzuki1(h, 0.9, k))
        assert np.linalg.norm(u - dense_evolution(h, 0.9), 2) < 1e-10


def test_suzuki1_rejects_bad_k():
    with pytest.raises(ValueError):
        suzuki1(TRIANGLE_H, 1.0, 0)


def test_identity_terms_are_skipped():
    h = Hamiltonian(2, [Term(2.0, PauliString()), Term(1.0, PauliString({1: "Z"}))])
    assert len(suzuki1(h, 1.0, 1)) == 1


# ----------------------------------------------------------------- s2 sweep


def test_s2_sweep_palindrome():
    seq = s2_sweep(TRIANGLE_H, 0.4)
    strings = [b.string for b in seq]
    assert strings == strings[::-1]
    assert len(seq) == 6


def test_s2_sweep_single_term_angle_sum():
    h = parse_hamiltonian("2.0 Z1", n_qubits=1)
    seq = s2_sweep(h, 0.5)
    assert len(seq) == 2
    assert abs(sum(b.angle for b in seq) - 0.5 * 2.0) < 1e-15


def test_s2_sweep_two_term_order():
    h = parse_hamiltonian("1 X1\n1 Z2", n_qubits=2)
    seq = s2_sweep(h, 1.0)
    labels = [b.string.to_sparse_text() for b in seq]
    assert labels == ["X1", "Z2", "Z2", "X1"]


# ---------------------------------------------------------------- suzuki4


def test_s2_coefficient_value():
    assert abs(S2_COEFFICIENT - 0.4144907717943757) < 1e-12


def test_suzuki4_block_count_and_angle_sums():
    h = parse_hamiltonian("1 X1\n0.5 Z2", n_qubits=2)
    t = 0.8
    seq = suzuki4_single_timestep(h, t)
    assert len(seq) == 10 * h.n_terms
    per_string: dict[str, float] = {}
    for b in seq:
        key = b.string.to_sparse_text()
        per_string[key] = per_string.get(key, 0.0) + b.angle
    assert abs(per_string["X1"] - t * 1.0) < 1e-12
    assert abs(per_string["Z2"] - t * 0.5) < 1e-12


def test_suzuki4_fourth_order_error_scaling():
    h = parse_hamiltonian("1 X1\n1 Z1", n_qubits=1)
    errors = []
    for t in (0.4, 0.2, 0.1):
        u = dense_sequence_unitary(suzuki4_single_timestep(h, t))
        errors.append(np.linalg.norm(u - dense_evolution(h, t), 2))
    for big, small in zip(errors, errors[1:]):
        assert 16.0 <= big / small <= 64.0


def test_suzuki4_exact_for_commuting():
    h = parse_hamiltonian("-1 Z1 Z2\n0.5 Z2 Z3\n0.25 Z3", n_qubits=3)
    u = dense_sequence_unitary(suzuki4_single_timestep(h, 1.3))
    assert np.linalg.norm(u - dense_evolution(h, 1.3), 2) < 1e-10


def test_expand_formula_dispatch():
    assert len(expand_formula(TRIANGLE_H, "s4", 1.0)) == 30
    assert len(expand_formula(TRIANGLE_H, "s1:2", 1.0)) == 6
    with pytest.raises(ValueError):
        expand_formula(TRIANGLE_H, "s3", 1.0)
    with pytest.raises(ValueError):
        expand_formula(TRIANGLE_H, "s1:x", 1.0)


def test_sequences_are_unitary():
    rng = random.Random(31)
    for _ in range(10):
        h = _random_h(rng, 3, 4)
        u = dense_sequence_unitary(suzuki4_single_timestep(h, 0.6))
        assert np.linalg.norm(u @ u.conj().T - np.eye(8), 2) < 1e-10


# -------------------------------------------------------------- cost models


def test_cost_model_durations():
    zz = RotationBlock(PauliString({1: "Z", 2: "Z"}), 0.1)
    x1 = RotationBlock(PauliString({1: "X"}), 0.1)
    z1 = RotationBlock(PauliString({1: "Z"}), 0.1)
    xyz = RotationBlock(PauliString({1: "X", 2: "Y", 3: "Z"}), 0.1)
    assert UNIT_COST.duration(zz) == UNIT_COST.duration(xyz) == 1
    assert LADDER_COST.duration(z1) == 1
    assert LADDER_COST.duration(x1) == 3
    assert LADDER_COST.duration(zz) == 3
    assert LADDER_COST.duration(xyz) == 7
    with pytest.raises(ValueError):
        CostModel("free")


def test_rotation_block_rejects_identity():
    with pytest.raises(ValueError):
        RotationBlock(PauliString(), 0.3)


# --------------------------------------------------------------- scheduling


def _seq(*supports, n=4):
    blocks = tuple(
        RotationBlock(PauliString({q: "Z" for q in sup}), 0.1) for sup in supports
    )
    return GateSequence(n, blocks)


def test_schedule_disjoint_blocks_share_slot():
    report = schedule_depth(_seq((1, 2), (3, 4)))
    assert report.total_depth == 1
    assert report.start_times == (0, 0)


def test_schedule_overlapping_blocks_serialize():
    report = schedule_depth(_seq((1, 2), (2, 3)))
    assert report.total_depth == 2
    assert report.start_times == (0, 1)


def test_schedule_triangle_sweep_depth_three():
    seq = suzuki1(TRIANGLE_H, 1.0, 1)
    assert schedule_depth(seq).total_depth == 3


def test_schedule_c4_listed_order():
    # blocks (1,2),(2,3),(3,4),(1,4): the last must follow (3,4) on qubit 4
    report = schedule_depth(suzuki1(C4_LISTED, 1.0, 1))
    assert report.total_depth == 4
    assert report.start_times == (0, 1, 2, 3)


def test_schedule_c4_canonical_order():
    # sorted edge order (1,2),(1,4),(2,3),(3,4) packs into 3 slots
    h = Hamiltonian(4, sorted(C4_LISTED.terms, key=lambda t: str(t.string)))
    assert schedule_depth(suzuki1(h, 1.0, 1)).total_depth == 3


def test_schedule_legality_randomized():
    rng = random.Random(33)
    for _ in range(30):
        h = _random_h(rng, 8, 12)
        seq = suzuki4_single_timestep(h, 1.0)
        cost = rng.choice([UNIT_COST, LADDER_COST])
        report = schedule_depth(seq, cost)
        frontier = {}
        for block, start, dur in zip(seq.blocks, report.start_times, report.durations):
            assert dur == cost.duration(block)
            for q in block.string.qubits:
                assert start >= frontier.get(q, 0)  # per-qubit order preserved
                frontier[q] = start + dur
        assert report.total_depth == max(frontier.values())


def test_layered_sweep_depth_bounded_by_layer_count():
    rng = random.Random(34)
    for _ in range(10):
        h = _random_h(rng, 10, 16)
        layered, colors = reorder_hamiltonian(h, "saturation")
        depth = schedule_depth(suzuki1(layered, 1.0, 1)).total_depth
        assert depth <= layered.n_layers == colors


# ---------------------------------------------------------- depth_reduction


def test_depth_reduction_disjoint_terms_ratio_one():
    h = parse_hamiltonian("1 Z1 Z2\n1 Z3 Z4", n_qubits=4)
    r = depth_reduction(h, "saturation")
    assert r.colors == 1
    assert r.ratio == 1.0


def test_depth_reduction_triangle_ratio_one():
    r = depth_reduction(TRIANGLE_H, "saturation")
    assert r.baseline_depth == r.reordered_depth == 30
    assert r.ratio == 1.0
    assert r.colors == 3


def test_depth_reduction_c4_improves():
    for method in ("saturation", "misra-gries"):
        r = depth_reduction(C4_LISTED, method)
        assert r.ratio < 1.0
        assert r.reordered_depth < r.baseline_depth


def test_depth_reduction_baseline_passthrough():
    r = depth_reduction(TRIANGLE_H, "baseline")
    assert r.ratio == 1.0 and r.colors is None


def test_suzuki4_term_angle_multiset():
    rng = random.Random(35)
    h = _random_h(rng, 5, 7)
    t = 0.9
    seq = suzuki4_single_timestep(h, t)
    totals: dict[str, float] = {}
    for b in seq:
        key = b.string.to_sparse_text()
        totals[key] = totals.get(key, 0.0) + b.angle
    expected = {t_.string.to_sparse_text(): t * t_.coefficient for t_ in h.terms}
    assert set(totals) == set(expected)
    for key in totals:
        assert math.isclose(totals[key], expected[key], abs_tol=1e-12)
