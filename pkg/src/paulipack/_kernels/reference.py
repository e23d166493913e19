"""Pure NumPy statevector kernels (fallback backend).

Semantics are the contract for the compiled backend: identical element
order, identical association of arithmetic per element, no parallel
reductions with run-dependent order. Amplitude arrays are complex128 of
length 2**n with qubit j mapped to bit j-1.
"""

import numpy as np


def _signs(values: np.ndarray, mask: int) -> np.ndarray:
    """(-1)**popcount(v & mask) as an int8 array of +-1."""
    par = np.bitwise_count(values & np.uint64(mask)).astype(np.int8) & 1
    return 1 - 2 * par


def _y_unit(n_y: int) -> complex:
    # -1j * 1j**n_y
    return (-1j, 1.0 + 0j, 1j, -1.0 + 0j)[n_y & 3]


def apply_pauli_rotation(
    amps: np.ndarray, flip_mask: int, phase_mask: int, n_y: int, theta: float
) -> None:
    """In-place amps <- cos(theta)*amps - i*sin(theta)*(P amps)."""
    c = np.cos(theta)
    s = np.sin(theta)
    idx = np.arange(amps.shape[0], dtype=np.uint64)
    if flip_mask == 0:
        sign = _signs(idx, phase_mask)
        amps *= np.where(sign == 1, c - 1j * s, c + 1j * s)
        return
    w = _y_unit(n_y) * s
    partner = idx ^ np.uint64(flip_mask)
    sp = _signs(partner, phase_mask)
    new = c * amps + w * (sp * amps[partner])
    amps[:] = new


def apply_x_mixer(amps: np.ndarray, n_qubits: int, beta: float) -> None:
    """In-place product of exp(-i*beta*X_q) over q = 1..n (commuting)."""
    for q in range(n_qubits):
        apply_pauli_rotation(amps, 1 << q, 0, 0, beta)


def apply_phases(amps: np.ndarray, energies: np.ndarray, gamma: float) -> None:
    """In-place amps[b] *= exp(-i*gamma*energies[b])."""
    amps *= np.exp(-1j * gamma * energies)


def accumulate_z_energy(out: np.ndarray, coeff: float, z_mask: int) -> None:
    """out[b] += coeff * (-1)**popcount(b & z_mask), elementwise."""
    idx = np.arange(out.shape[0], dtype=np.uint64)
    out += coeff * _signs(idx, z_mask)


def expectation_diagonal(amps: np.ndarray, energies: np.ndarray) -> float:
    probs = amps.real * amps.real + amps.imag * amps.imag
    return float(probs @ energies)


def pauli_expectation(
    amps: np.ndarray, flip_mask: int, phase_mask: int, n_y: int
) -> complex:
    """<amps| P |amps> for the signed-permutation P given by the masks."""
    idx = np.arange(amps.shape[0], dtype=np.uint64)
    unit = (1.0 + 0j, 1j, -1.0 + 0j, -1j)[n_y & 3]
    partner = idx ^ np.uint64(flip_mask)
    acted = unit * (_signs(partner, phase_mask) * amps[partner])
    return complex(np.vdot(amps, acted))
