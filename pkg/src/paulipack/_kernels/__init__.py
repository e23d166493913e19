"""Statevector kernel backends.

The compiled Cython core is preferred when built; otherwise the NumPy
fallback in `reference` is used. Selection happens once at import and can
be forced with PAULIPACK_KERNELS=python|compiled (default: auto).

Both backends implement the same six functions with identical element
ordering; results agree to floating-point rounding and each backend is
deterministic on its own.
"""

import os

from . import reference

_requested = os.environ.get("PAULIPACK_KERNELS", "auto").lower()

if _requested == "python":
    _impl = reference
    BACKEND = "python"
elif _requested in ("auto", "compiled"):
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "PAULIPACK_KERNELS=compiled but the extension is not built; "
                "run `pip install -e .` or `python setup.py build_ext --inplace`"
            ) from None
        _impl = reference
        BACKEND = "python"
else:
    raise ValueError(
        f"PAULIPACK_KERNELS must be auto, compiled, or python, got {_requested!r}"
    )

apply_pauli_rotation = _impl.apply_pauli_rotation
apply_x_mixer = _impl.apply_x_mixer
apply_phases = _impl.apply_phases
accumulate_z_energy = _impl.accumulate_z_energy
expectation_diagonal = _impl.expectation_diagonal
pauli_expectation = _impl.pauli_expectation
