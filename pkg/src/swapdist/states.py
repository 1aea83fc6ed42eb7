"""Dense state-vector algebra over labelled qubits.

Amplitudes follow a fixed bit-order convention: ``labels[0]`` is the most
significant bit of the amplitude index. For labels ``(p, q)`` the amplitude
order is therefore ``|00>, |01>, |10>, |11>`` with ``p`` the left bit. The
convention is load-bearing everywhere; nothing else in the package fixes it.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

# Tolerance for every norm / fidelity / hermiticity acceptance check.
NORM_TOL = 1e-9
# Projection probabilities below this are treated as impossible outcomes
# rather than renormalized noise.
PROB_FLOOR = 1e-12
# Hard cap on live register size (2**26 complex amplitudes ~ 1 GiB).
MAX_QUBITS = 26

QubitLabel = int


class PauliOp(str, Enum):
    """Single-qubit correction operators. ZX means X first, then Z."""

    I = "I"
    X = "X"
    Z = "Z"
    ZX = "ZX"


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``n`` labelled qubits as 2**n complex amplitudes.

    Instances are immutable: the amplitude array is copied and frozen at
    construction, and every operation returns a new value. A zero-qubit
    state (empty labels, a single unit-modulus amplitude) is legal; it is
    what remains when a measurement consumes the entire register.
    """

    labels: tuple[QubitLabel, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(int(l) for l in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        if len(labels) > MAX_QUBITS:
            raise ValueError(f"{len(labels)} qubits exceeds the {MAX_QUBITS}-qubit cap")
        amps = np.asarray(self.amps, dtype=np.complex128).reshape(-1).copy()
        if amps.size != 1 << len(labels):
            raise ValueError(
                f"expected {1 << len(labels)} amplitudes for {len(labels)} qubits, got {amps.size}"
            )
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amps", amps)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def axis(self, label: QubitLabel) -> int:
        """Position of ``label`` in the register (0 = most significant bit)."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"qubit {label} not in register {self.labels}") from None

    def tensor_view(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit, register order."""
        return self.amps.reshape([2] * self.n_qubits)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed state of labelled qubits; Hermitian, unit trace."""

    labels: tuple[QubitLabel, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(int(l) for l in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        dim = 1 << len(labels)
        entries = np.asarray(self.entries, dtype=np.complex128).copy()
        if entries.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got shape {entries.shape}")
        if not np.allclose(entries, entries.conj().T, atol=NORM_TOL):
            raise ValueError("density matrix is not Hermitian")
        trace = complex(np.trace(entries))
        if abs(trace - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        entries.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", entries)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def purity(self) -> float:
        """trace(rho^2); 1 for a pure state, 1/2**n for the maximally mixed one."""
        return float(np.trace(self.entries @ self.entries).real)


def make_basis_state(bits: Sequence[int], labels: Sequence[QubitLabel] | None = None) -> StateVector:
    """Computational basis state |b1...bn> with one unit amplitude.

    Labels default to 1..n when not given.
    """
    if len(bits) == 0:
        raise ValueError("a basis state needs at least one qubit")
    if len(bits) > MAX_QUBITS:
        raise ValueError(f"{len(bits)} qubits exceeds the {MAX_QUBITS}-qubit cap")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bits must be 0 or 1, got {list(bits)}")
    if labels is None:
        labels = tuple(range(1, len(bits) + 1))
    if len(labels) != len(bits):
        raise ValueError("labels and bits must have the same length")
    index = 0
    for b in bits:
        index = (index << 1) | b
    amps = np.zeros(1 << len(bits), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(tuple(labels), amps)


def tensor(s1: StateVector, s2: StateVector) -> StateVector:
    """Tensor product; labels concatenate s1 then s2 (s1 on the high bits)."""
    overlap = set(s1.labels) & set(s2.labels)
    if overlap:
        raise ValueError(f"label collision in tensor product: {sorted(overlap)}")
    if s1.n_qubits + s2.n_qubits > MAX_QUBITS:
        raise ValueError(
            f"tensor product of {s1.n_qubits}+{s2.n_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap"
        )
    return StateVector(s1.labels + s2.labels, np.kron(s1.amps, s2.amps))


def permute_to(s: StateVector, new_label_order: Sequence[QubitLabel]) -> StateVector:
    """Re-index amplitudes so the register reads in ``new_label_order``.

    The physical state is unchanged; applying the inverse permutation gives
    back the original amplitudes bit-exactly.
    """
    new_order = tuple(new_label_order)
    if sorted(new_order) != sorted(s.labels):
        raise ValueError(f"{new_order} is not a permutation of {s.labels}")
    if new_order == s.labels:
        return s
    axes = [s.labels.index(l) for l in new_order]
    arr = s.tensor_view().transpose(axes).reshape(-1)
    return StateVector(new_order, arr)


def relabel(s: StateVector, mapping: dict[QubitLabel, QubitLabel]) -> StateVector:
    """Rename qubits in place (amplitudes untouched); mapping may be partial."""
    new_labels = tuple(mapping.get(l, l) for l in s.labels)
    if len(set(new_labels)) != len(new_labels):
        raise ValueError(f"relabeling {mapping} collides on {new_labels}")
    return StateVector(new_labels, s.amps)


def fidelity(s1: StateVector, s2: StateVector) -> float:
    """|<s1|s2>|^2, invariant under global phase. Label sets must match."""
    if set(s1.labels) != set(s2.labels):
        raise ValueError(f"label sets differ: {s1.labels} vs {s2.labels}")
    aligned = permute_to(s2, s1.labels)
    value = float(np.abs(np.vdot(s1.amps, aligned.amps)) ** 2)
    return min(value, 1.0)


def reduced_density(s: StateVector, keep: Iterable[QubitLabel]) -> DensityMatrix:
    """Partial trace onto ``keep``.

    When ``keep`` is an ordered sequence its order fixes the row/column
    ordering of the result; a plain set falls back to register order.
    """
    if isinstance(keep, (set, frozenset)):
        keep_list = [l for l in s.labels if l in keep]
        if len(keep_list) != len(keep):
            missing = sorted(set(keep) - set(s.labels))
            raise ValueError(f"unknown qubit labels: {missing}")
    else:
        keep_list = [int(l) for l in keep]
        for l in keep_list:
            if l not in s.labels:
                raise ValueError(f"unknown qubit label: {l}")
        if len(set(keep_list)) != len(keep_list):
            raise ValueError(f"duplicate labels in keep: {keep_list}")
    if not keep_list:
        raise ValueError("keep set must be nonempty")
    drop = [l for l in s.labels if l not in keep_list]
    order = [s.labels.index(l) for l in keep_list] + [s.labels.index(l) for l in drop]
    block = s.tensor_view().transpose(order).reshape(1 << len(keep_list), -1)
    rho = block @ block.conj().T
    return DensityMatrix(tuple(keep_list), rho)


def apply_pauli(s: StateVector, q: QubitLabel, op: PauliOp) -> StateVector:
    """Apply a single-qubit Pauli on ``q``; norm is preserved."""
    axis = s.axis(q)
    if op is PauliOp.I:
        return s
    arr = s.tensor_view()
    if op in (PauliOp.X, PauliOp.ZX):
        arr = np.flip(arr, axis=axis)
    if op in (PauliOp.Z, PauliOp.ZX):
        shape = [1] * s.n_qubits
        shape[axis] = 2
        arr = arr * np.array([1.0, -1.0]).reshape(shape)
    return StateVector(s.labels, arr.reshape(-1))
