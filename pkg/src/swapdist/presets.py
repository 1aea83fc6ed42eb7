"""Named test states and seeded random state generation."""
from __future__ import annotations

import numpy as np

from .bell import BellKind, make_bell
from .states import MAX_QUBITS, QubitLabel, StateVector

PRESET_NAMES = ("ghz", "w", "bell", "product")
RANDOM_SOURCE = "random-haar"


def _default_labels(n: int) -> tuple[QubitLabel, ...]:
    return tuple(range(1, n + 1))


def ghz_state(n: int, labels: tuple[QubitLabel, ...] | None = None) -> StateVector:
    """(|0...0> + |1...1>) / sqrt(2)."""
    _check_size(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(labels or _default_labels(n), amps)


def w_state(n: int, labels: tuple[QubitLabel, ...] | None = None) -> StateVector:
    """Uniform superposition of all single-excitation basis states."""
    _check_size(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    for k in range(n):
        amps[1 << k] = 1.0 / np.sqrt(n)
    return StateVector(labels or _default_labels(n), amps)


def product_plus_state(n: int, labels: tuple[QubitLabel, ...] | None = None) -> StateVector:
    """Each qubit independently in (|0> + |1>) / sqrt(2)."""
    _check_size(n)
    amps = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)
    return StateVector(labels or _default_labels(n), amps)


def random_state(n: int, rng: np.random.Generator,
                 labels: tuple[QubitLabel, ...] | None = None) -> StateVector:
    """Haar-distributed pure state: normalized complex Gaussian amplitudes."""
    _check_size(n)
    dim = 1 << n
    raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(labels or _default_labels(n), raw / np.linalg.norm(raw))


def preset_state(name: str, n: int) -> StateVector:
    """Look up a named preset; "bell" is the two-qubit singlet."""
    if name == "ghz":
        return ghz_state(n)
    if name == "w":
        return w_state(n)
    if name == "product":
        return product_plus_state(n)
    if name == "bell":
        if n != 2:
            raise ValueError(f"the bell preset is a 2-qubit state, got n={n}")
        return make_bell(BellKind.PHI_MINUS, (1, 2))
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit cap")
