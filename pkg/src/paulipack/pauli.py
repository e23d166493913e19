"""Sparse Pauli strings, weighted terms, and Pauli-sum Hamiltonians.

Qubit indices are 1-based in every public interface. A Pauli string is kept
in sparse canonical form: a sorted map from qubit index to one of the axes
"X", "Y", "Z". Qubits absent from the map act as identity, so the empty
string is the identity operator.

Text formats
------------
A single Pauli string is either dense ("IIXIYZ", one character per qubit),
sparse ("X3 Y5 Z6", whitespace-separated axis+index tokens), or the literal
"I" for the identity. A Hamiltonian file has one term per line,
``<coefficient> <pauli>``; ``#`` starts a comment and blank lines are
ignored. The serializer emits a ``# qubits N`` comment header which the
parser honors, so round-trips preserve the qubit count.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import FormatError, NotIsingError

AXES = ("X", "Y", "Z")

_SPARSE_TOKEN = re.compile(r"^([XYZ])([0-9]+)$")
_QUBITS_HEADER = re.compile(r"^#\s*qubits\s+([0-9]+)\s*$")


class PauliString:
    """Tensor product of Pauli matrices, stored sparsely."""

    __slots__ = ("_items", "_axes", "_qubits")

    def __init__(self, support: dict[int, str] | None = None):
        items = []
        for q, ax in sorted((support or {}).items()):
            if not isinstance(q, int) or q < 1:
                raise ValueError(f"qubit index must be a positive integer, got {q!r}")
            if ax not in AXES:
                raise ValueError(f"axis must be one of {AXES}, got {ax!r}")
            items.append((q, ax))
        self._items = tuple(items)
        self._axes = dict(items)
        self._qubits = frozenset(self._axes)

    @property
    def support(self) -> dict[int, str]:
        """Copy of the qubit -> axis map."""
        return dict(self._axes)

    @property
    def qubits(self) -> frozenset[int]:
        return self._qubits

    @property
    def is_identity(self) -> bool:
        return not self._items

    @property
    def weight(self) -> int:
        return len(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def axis(self, qubit: int) -> str | None:
        return self._axes.get(qubit)

    def max_qubit(self) -> int:
        """Largest qubit index acted on (0 for the identity)."""
        return self._items[-1][0] if self._items else 0

    def overlaps(self, other: "PauliString") -> bool:
        """True iff both strings act non-trivially on some common qubit."""
        return not self._qubits.isdisjoint(other._qubits)

    def commutes(self, other: "PauliString") -> bool:
        """Symplectic test: commute iff the number of shared qubits with
        differing axes is even."""
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        clashes = 0
        for q, ax in small._items:
            bx = big._axes.get(q)
            if bx is not None and bx != ax:
                clashes += 1
        return clashes % 2 == 0

    def bitmasks(self) -> tuple[int, int, int]:
        """(flip_mask, phase_mask, n_y) with qubit j mapped to bit j-1.

        flip_mask has a bit per X/Y factor, phase_mask per Y/Z factor, and
        n_y counts Y factors; together they determine the signed-permutation
        action on computational basis states.
        """
        flip = 0
        phase = 0
        n_y = 0
        for q, ax in self._items:
            bit = 1 << (q - 1)
            if ax != "Z":
                flip |= bit
            if ax != "X":
                phase |= bit
            if ax == "Y":
                n_y += 1
        return flip, phase, n_y

    def to_sparse_text(self) -> str:
        if not self._items:
            return "I"
        return " ".join(f"{ax}{q}" for q, ax in self._items)

    def to_dense_text(self, n_qubits: int) -> str:
        if self.max_qubit() > n_qubits:
            raise ValueError(f"string acts on qubit {self.max_qubit()} > {n_qubits}")
        chars = ["I"] * n_qubits
        for q, ax in self._items:
            chars[q - 1] = ax
        return "".join(chars)

    def __eq__(self, other) -> bool:
        return isinstance(other, PauliString) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"PauliString({self.to_sparse_text()!r})"


def parse_pauli_string(text: str, n_qubits: int) -> PauliString:
    """Parse a dense or sparse Pauli string with 1-based qubit indices."""
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    s = text.strip()
    if not s:
        raise FormatError("empty Pauli string")
    if s == "I":
        return PauliString()
    if " " not in s and all(ch in "IXYZ" for ch in s):
        if len(s) != n_qubits:
            raise FormatError(
                f"dense string {s!r} has length {len(s)}, expected {n_qubits}"
            )
        return PauliString({i + 1: ch for i, ch in enumerate(s) if ch != "I"})
    support: dict[int, str] = {}
    for token in s.split():
        m = _SPARSE_TOKEN.match(token)
        if m is None:
            raise FormatError(f"unrecognized Pauli token {token!r}")
        ax, q = m.group(1), int(m.group(2))
        if not 1 <= q <= n_qubits:
            raise FormatError(f"qubit index {q} outside [1, {n_qubits}]")
        if support.get(q, ax) != ax:
            raise FormatError(f"conflicting axes for qubit {q}")
        support[q] = ax
    return PauliString(support)


def overlap(a: PauliString, b: PauliString) -> bool:
    """True iff a and b act non-trivially on at least one shared qubit."""
    return a.overlaps(b)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the Pauli strings commute. Non-overlap implies True."""
    return a.commutes(b)


@dataclass(frozen=True)
class Term:
    """A real coefficient times a Pauli string."""

    coefficient: float
    string: PauliString

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise ValueError("term coefficient must be finite")


class Hamiltonian:
    """Ordered sum of Pauli terms on a fixed number of qubits.

    Construction canonicalizes: terms with equal Pauli strings are merged by
    summing coefficients (keeping the first occurrence's position) and terms
    whose merged coefficient is exactly zero are dropped.
    """

    __slots__ = ("n_qubits", "terms")

    def __init__(self, n_qubits: int, terms: Iterable[Term]):
        if n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        merged: dict[PauliString, int] = {}
        out: list[Term] = []
        for term in terms:
            if term.string.max_qubit() > n_qubits:
                raise ValueError(
                    f"term {term.string!r} acts outside [1, {n_qubits}]"
                )
            pos = merged.get(term.string)
            if pos is None:
                merged[term.string] = len(out)
                out.append(term)
            else:
                out[pos] = Term(out[pos].coefficient + term.coefficient, term.string)
        self.n_qubits = n_qubits
        self.terms = tuple(t for t in out if t.coefficient != 0.0)

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hamiltonian)
            and self.n_qubits == other.n_qubits
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n_qubits, self.terms))

    def __repr__(self) -> str:
        return f"Hamiltonian(n_qubits={self.n_qubits}, n_terms={self.n_terms})"

    def to_text(self) -> str:
        lines = [f"# qubits {self.n_qubits}"]
        for term in self.terms:
            lines.append(f"{term.coefficient!r} {term.string.to_sparse_text()}")
        return "\n".join(lines) + "\n"


def parse_hamiltonian(text: str, n_qubits: int | None = None) -> Hamiltonian:
    """Parse the one-term-per-line Hamiltonian text format.

    The qubit count is taken from an optional ``# qubits N`` header, an
    explicit argument, or inferred (dense line length / max sparse index).
    """
    declared = n_qubits
    raw_terms: list[tuple[float, str]] = []
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
        if len(tokens) < 2:
            raise FormatError(f"line {lineno}: expected '<coefficient> <pauli>'")
        try:
            coeff = float(tokens[0])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad coefficient {tokens[0]!r}") from exc
        if not math.isfinite(coeff):
            raise FormatError(f"line {lineno}: coefficient must be finite")
        raw_terms.append((coeff, " ".join(tokens[1:])))

    n = declared
    if n is None:
        n = 1
        for _, pauli_text in raw_terms:
            s = pauli_text.strip()
            if s == "I":
                continue
            if " " not in s and all(ch in "IXYZ" for ch in s):
                n = max(n, len(s))
            else:
                for token in s.split():
                    m = _SPARSE_TOKEN.match(token)
                    if m:
                        n = max(n, int(m.group(2)))

    terms = [Term(coeff, parse_pauli_string(ptext, n)) for coeff, ptext in raw_terms]
    return Hamiltonian(n, terms)


class IsingHamiltonian:
    """H = -sum_{j<k} J_{jk} Z_j Z_k - sum_j h_j Z_j with real weights.

    Stored entries are nonzero; coupling keys are normalized to j < k.
    """

    __slots__ = ("n_qubits", "couplings", "fields")

    def __init__(
        self,
        n_qubits: int,
        couplings: dict[tuple[int, int], float] | None = None,
        fields: dict[int, float] | None = None,
    ):
        if n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        self.n_qubits = n_qubits
        self.couplings: dict[tuple[int, int], float] = {}
        self.fields: dict[int, float] = {}
        for (j, k), weight in (couplings or {}).items():
            if not 1 <= j < k <= n_qubits:
                raise ValueError(f"coupling key ({j}, {k}) must satisfy 1 <= j < k <= N")
            if weight == 0.0:
                raise ValueError("stored coupling weights must be nonzero")
            self.couplings[(j, k)] = float(weight)
        for j, weight in (fields or {}).items():
            if not 1 <= j <= n_qubits:
                raise ValueError(f"field index {j} outside [1, {n_qubits}]")
            if weight == 0.0:
                raise ValueError("stored field weights must be nonzero")
            self.fields[j] = float(weight)

    @property
    def n_terms(self) -> int:
        return len(self.couplings) + len(self.fields)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IsingHamiltonian)
            and self.n_qubits == other.n_qubits
            and self.couplings == other.couplings
            and self.fields == other.fields
        )

    def __repr__(self) -> str:
        return (
            f"IsingHamiltonian(n_qubits={self.n_qubits}, "
            f"couplings={len(self.couplings)}, fields={len(self.fields)})"
        )

    def to_hamiltonian(self) -> Hamiltonian:
        """Expand back to a Pauli-sum Hamiltonian (couplings first, sorted)."""
        terms = [
            Term(-weight, PauliString({j: "Z", k: "Z"}))
            for (j, k), weight in sorted(self.couplings.items())
        ]
        terms.extend(
            Term(-weight, PauliString({j: "Z"}))
            for j, weight in sorted(self.fields.items())
        )
        return Hamiltonian(self.n_qubits, terms)


def to_ising(h: Hamiltonian) -> IsingHamiltonian:
    """Classify a Hamiltonian of Z_jZ_k and Z_j terms as Ising.

    Term coefficients are negated, so ``-1.0 Z1 Z2`` becomes J_{1,2} = 1.
    Raises NotIsingError for any other term shape.
    """
    couplings: dict[tuple[int, int], float] = {}
    fields: dict[int, float] = {}
    for term in h.terms:
        qubits = sorted(term.string.qubits)
        axes = [term.string.axis(q) for q in qubits]
        if any(ax != "Z" for ax in axes):
            raise NotIsingError(f"term {term.string!r} has a non-Z axis")
        if len(qubits) == 2:
            couplings[(qubits[0], qubits[1])] = -term.coefficient
        elif len(qubits) == 1:
            fields[qubits[0]] = -term.coefficient
        else:
            raise NotIsingError(
                f"term {term.string!r} has support size {len(qubits)}, expected 1 or 2"
            )
    return IsingHamiltonian(h.n_qubits, couplings, fields)
