"""Throughput comparison of the compiled kernels vs the NumPy fallback.

Run after building the extension (`pip install -e .` or
`python setup.py build_ext --inplace`):

    python benchmarks/compare_backends.py
"""

import time

import numpy as np

from paulipack._kernels import reference

try:
    from paulipack._kernels import _fast
except ImportError:
    _fast = None


def _random_state(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return (amps / np.linalg.norm(amps)).astype(np.complex128)


def _time(fn, repeats=200):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def bench_backend(impl, n):
    amps = _random_state(n, seed=1)
    energies = np.arange(1 << n, dtype=np.float64)
    flip, phase = 0b1010, 0b0110
    rows = {}
    work = amps.copy()
    rows["pauli_rotation"] = _time(
        lambda: impl.apply_pauli_rotation(work, flip, phase, 1, 0.3)
    )
    work2 = amps.copy()
    rows["x_mixer"] = _time(lambda: impl.apply_x_mixer(work2, n, 0.2))
    work3 = amps.copy()
    rows["phases"] = _time(lambda: impl.apply_phases(work3, energies, 0.1))
    rows["expectation_diag"] = _time(lambda: impl.expectation_diagonal(amps, energies))
    rows["pauli_expectation"] = _time(
        lambda: impl.pauli_expectation(amps, flip, phase, 1)
    )
    return rows


def main():
    if _fast is None:
        print("compiled backend not built; showing fallback only")
    for n in (10, 12, 14, 16):
        print(f"\nn = {n} qubits (dim {1 << n})")
        ref_rows = bench_backend(reference, n)
        fast_rows = bench_backend(_fast, n) if _fast is not None else None
        header = f"{'kernel':<20}{'numpy [us]':>12}"
        if fast_rows:
            header += f"{'compiled [us]':>15}{'speedup':>9}"
        print(header)
        for name, ref_t in ref_rows.items():
            line = f"{name:<20}{ref_t * 1e6:>12.2f}"
            if fast_rows:
                fast_t = fast_rows[name]
                line += f"{fast_t * 1e6:>15.2f}{ref_t / fast_t:>9.2f}"
            print(line)


if __name__ == "__main__":
    main()
