"""Exact statevector simulation of Pauli-rotation circuits and the QAOA
ansatz, with analytic depth-dependent depolarizing damping.

Basis convention: amplitude index b encodes bitstring x_1...x_N with
x_j = bit (j-1) of b, and |0> is the +1 eigenstate of Z. States are capped
at MAX_QUBITS qubits (desk-scale memory).

Evolution routines dispatch to the selected kernel backend (compiled or
NumPy); every public operation returns a fresh Statevector and leaves its
input untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .coloring import InteractionGraph
from .errors import InvariantError
from .metrics import CutDistribution, cut_values, index_of_bitstring
from .pauli import Hamiltonian, IsingHamiltonian
from .trotter import CostModel, GateSequence, RotationBlock, UNIT_COST

MAX_QUBITS = 16


def _check_qubit_count(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")


@dataclass(frozen=True, eq=False)
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude array must have length 2**n")
        if self.amplitudes.dtype != np.complex128:
            raise ValueError("amplitudes must be complex128")
        if abs(self.norm() - 1.0) > 1e-8:
            raise InvariantError(f"state norm {self.norm()!r} is not 1")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real * a.real + a.imag * a.imag

    def copy(self) -> "Statevector":
        return Statevector(self.n_qubits, self.amplitudes.copy())


def prepare_plus_state(n: int) -> Statevector:
    """Uniform superposition |+>^n (highest energy state of sum_j X_j)."""
    _check_qubit_count(n)
    dim = 1 << n
    amps = np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128)
    return Statevector(n, amps)


def basis_state(bits: str) -> Statevector:
    """Computational basis state for bitstring x_1...x_N."""
    n = len(bits)
    _check_qubit_count(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index_of_bitstring(bits)] = 1.0
    return Statevector(n, amps)


def apply_pauli_exp(s: Statevector, block: RotationBlock) -> Statevector:
    """exp(-i*angle*P)|s>, using P^2 = I: cos(t)|s> - i sin(t) P|s>."""
    if block.string.max_qubit() > s.n_qubits:
        raise ValueError("block acts outside the state's qubits")
    flip, phase, n_y = block.string.bitmasks()
    amps = s.amplitudes.copy()
    kernels.apply_pauli_rotation(amps, flip, phase, n_y, block.angle)
    return Statevector(s.n_qubits, amps)


def apply_mixer(s: Statevector, beta: float) -> Statevector:
    """Product of exp(-i*beta*X_j) over every qubit (factors commute)."""
    amps = s.amplitudes.copy()
    kernels.apply_x_mixer(amps, s.n_qubits, beta)
    return Statevector(s.n_qubits, amps)


def simulate_sequence(s: Statevector, seq: GateSequence) -> Statevector:
    """Apply a rotation-block sequence in order."""
    if seq.n_qubits > s.n_qubits:
        raise ValueError("sequence acts outside the state's qubits")
    amps = s.amplitudes.copy()
    for block in seq.blocks:
        flip, phase, n_y = block.string.bitmasks()
        kernels.apply_pauli_rotation(amps, flip, phase, n_y, block.angle)
    return Statevector(s.n_qubits, amps)


def ising_energy_table(h: IsingHamiltonian) -> np.ndarray:
    """Diagonal of the Ising operator over all basis states.

    Terms are accumulated in canonical (sorted) order, so the table, and
    everything derived from it, is independent of any term reordering.
    """
    table = np.zeros(1 << h.n_qubits, dtype=np.float64)
    for (j, k), weight in sorted(h.couplings.items()):
        mask = (1 << (j - 1)) | (1 << (k - 1))
        kernels.accumulate_z_energy(table, -weight, mask)
    for j, weight in sorted(h.fields.items()):
        kernels.accumulate_z_energy(table, -weight, 1 << (j - 1))
    return table


def apply_cost_layer(s: Statevector, cost: IsingHamiltonian, gamma: float) -> Statevector:
    """exp(-i*gamma*C)|s> for a diagonal Ising cost operator (exact, since
    all Z-terms commute)."""
    if cost.n_qubits != s.n_qubits:
        raise ValueError("cost operator and state qubit counts differ")
    amps = s.amplitudes.copy()
    kernels.apply_phases(amps, ising_energy_table(cost), gamma)
    return Statevector(s.n_qubits, amps)


@dataclass(frozen=True)
class QaoaParams:
    betas: tuple[float, ...]
    gammas: tuple[float, ...]

    def __post_init__(self):
        if len(self.betas) != len(self.gammas):
            raise ValueError("betas and gammas must have equal length")
        if len(self.betas) < 1:
            raise ValueError("at least one layer is required")

    @property
    def p(self) -> int:
        return len(self.betas)

    @classmethod
    def from_vector(cls, x) -> "QaoaParams":
        x = np.asarray(x, dtype=np.float64)
        if x.size % 2:
            raise ValueError("parameter vector must have even length")
        p = x.size // 2
        return cls(tuple(x[:p]), tuple(x[p:]))

    def to_vector(self) -> np.ndarray:
        return np.asarray(self.betas + self.gammas, dtype=np.float64)


def qaoa_state(params: QaoaParams, cost: IsingHamiltonian) -> Statevector:
    """Alternating cost/mixer ansatz applied to |+>^n, layer 0 first."""
    _check_qubit_count(cost.n_qubits)
    table = ising_energy_table(cost)
    return _qaoa_state_with_table(params, cost.n_qubits, table)


def _qaoa_state_with_table(
    params: QaoaParams, n_qubits: int, table: np.ndarray
) -> Statevector:
    s = prepare_plus_state(n_qubits)
    amps = s.amplitudes
    for beta, gamma in zip(params.betas, params.gammas):
        kernels.apply_phases(amps, table, gamma)
        kernels.apply_x_mixer(amps, n_qubits, beta)
    return Statevector(n_qubits, amps)


def expectation(s: Statevector, h: Hamiltonian | IsingHamiltonian) -> float:
    """<s|H|s>, summed term by term in the Hamiltonian's order."""
    if h.n_qubits != s.n_qubits:
        raise ValueError("operator and state qubit counts differ")
    if isinstance(h, IsingHamiltonian):
        return kernels.expectation_diagonal(s.amplitudes, ising_energy_table(h))
    total = 0j
    for term in h.terms:
        flip, phase, n_y = term.string.bitmasks()
        total += term.coefficient * kernels.pauli_expectation(
            s.amplitudes, flip, phase, n_y
        )
    scale = max(1.0, abs(total.real))
    if abs(total.imag) > 1e-8 * scale:
        raise InvariantError(f"expectation has imaginary part {total.imag!r}")
    return total.real


@dataclass(frozen=True)
class NoiseConfig:
    """Global depolarizing proxy: signal survives (1-rate) per depth unit.

    The depth fed to it comes from scheduling the circuit under `cost`.
    """

    rate: float
    cost: CostModel = UNIT_COST

    def __post_init__(self):
        if not 0.0 <= self.rate < 1.0:
            raise ValueError("noise rate must lie in [0, 1)")

    def damping(self, depth: int) -> float:
        return (1.0 - self.rate) ** depth


def noisy_expectation(
    s: Statevector,
    h: Hamiltonian | IsingHamiltonian,
    depth: int,
    noise: NoiseConfig,
) -> float:
    """(1-rate)**depth times the ideal expectation.

    Exact for a global depolarizing channel because every Pauli term here
    is traceless: the maximally mixed component contributes nothing.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return noise.damping(depth) * expectation(s, h)


def cut_distribution(s: Statevector, graph: InteractionGraph) -> CutDistribution:
    """Exact measurement distribution of |s> paired with cut values."""
    if graph.n_vertices != s.n_qubits:
        raise ValueError("graph and state qubit counts differ")
    if graph.has_loops:
        raise ValueError("cut distributions require a loop-free graph")
    return CutDistribution(graph, s.probabilities(), cut_values(graph))
