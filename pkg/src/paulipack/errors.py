"""Exception types shared across the package."""


class FormatError(ValueError):
    """Malformed textual input (Pauli string, Hamiltonian file, graph file)."""


class NotIsingError(ValueError):
    """Hamiltonian contains a term that is not Z_j Z_k or Z_j."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
