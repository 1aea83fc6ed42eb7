"""Bell basis, projective Bell measurement, and the single-qubit split.

The four Bell states over a pair (p, q), in this package's bit order
(p is the high bit):

    VARPHI_PLUS  = (|00> + |11>) / sqrt(2)
    VARPHI_MINUS = (|00> - |11>) / sqrt(2)
    PHI_PLUS     = (|01> + |10>) / sqrt(2)
    PHI_MINUS    = (|01> - |10>) / sqrt(2)   (the singlet)

``KIND_ORDER`` fixes the order used for sampling and for every serialized
probability table, so transcripts are reproducible given the same uniform
random stream.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import (
    NORM_TOL,
    PROB_FLOOR,
    QubitLabel,
    StateVector,
    fidelity,
)

_SQRT2_INV = 1.0 / np.sqrt(2.0)


class BellKind(str, Enum):
    VARPHI_PLUS = "VARPHI_PLUS"
    VARPHI_MINUS = "VARPHI_MINUS"
    PHI_PLUS = "PHI_PLUS"
    PHI_MINUS = "PHI_MINUS"


KIND_ORDER: tuple[BellKind, ...] = (
    BellKind.VARPHI_PLUS,
    BellKind.VARPHI_MINUS,
    BellKind.PHI_PLUS,
    BellKind.PHI_MINUS,
)

_BELL_AMPS: dict[BellKind, np.ndarray] = {
    BellKind.VARPHI_PLUS: np.array([1, 0, 0, 1], dtype=np.complex128) * _SQRT2_INV,
    BellKind.VARPHI_MINUS: np.array([1, 0, 0, -1], dtype=np.complex128) * _SQRT2_INV,
    BellKind.PHI_PLUS: np.array([0, 1, 1, 0], dtype=np.complex128) * _SQRT2_INV,
    BellKind.PHI_MINUS: np.array([0, 1, -1, 0], dtype=np.complex128) * _SQRT2_INV,
}


@dataclass(frozen=True)
class BellOutcome:
    """Result of a Bell measurement on one pair."""

    kind: BellKind
    pair: tuple[QubitLabel, QubitLabel]
    probability: float


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """Split of a state about one qubit: amp0*|0>|rest0> + amp1*|1>|rest1>.

    amp0 and amp1 are real and non-negative; all phase lives in the residual
    states. When one amplitude vanishes the matching residual is None and
    ``degenerate`` is set.
    """

    amp0: float
    amp1: float
    rest0: StateVector | None
    rest1: StateVector | None
    degenerate: bool


def make_bell(kind: BellKind, labels: tuple[QubitLabel, QubitLabel]) -> StateVector:
    """The named Bell state over two distinct labels."""
    p, q = labels
    if p == q:
        raise ValueError(f"a Bell pair needs two distinct qubits, got {labels}")
    return StateVector((p, q), _BELL_AMPS[kind])


def _split_blocks(s: StateVector, about: QubitLabel) -> tuple[tuple[QubitLabel, ...], np.ndarray]:
    """Amplitudes reshaped to (2, rest) with ``about`` on the leading axis."""
    axis = s.axis(about)
    rest = tuple(l for l in s.labels if l != about)
    arr = s.tensor_view()
    if axis != 0:
        arr = np.moveaxis(arr, axis, 0)
    return rest, arr.reshape(2, -1)


def decompose(s: StateVector, about: QubitLabel) -> DecompositionResult:
    """Split ``s`` into its qubit ``about`` = 0 and = 1 components.

    Requires at least two qubits: the residual states live on the rest of
    the register. amp0**2 + amp1**2 == 1 and reassembling
    amp0*|0>|rest0> + amp1*|1>|rest1> reproduces the input exactly.
    """
    if s.n_qubits < 2:
        raise ValueError("decompose needs a register of at least two qubits")
    rest_labels, blocks = _split_blocks(s, about)
    amp0 = float(np.linalg.norm(blocks[0]))
    amp1 = float(np.linalg.norm(blocks[1]))
    rest0 = rest1 = None
    if amp0 * amp0 >= PROB_FLOOR:
        rest0 = StateVector(rest_labels, blocks[0] / amp0)
    else:
        amp0 = 0.0
    if amp1 * amp1 >= PROB_FLOOR:
        rest1 = StateVector(rest_labels, blocks[1] / amp1)
    else:
        amp1 = 0.0
    return DecompositionResult(
        amp0=amp0,
        amp1=amp1,
        rest0=rest0,
        rest1=rest1,
        degenerate=rest0 is None or rest1 is None,
    )


def is_product_about(d: DecompositionResult) -> bool:
    """True when the split qubit is unentangled from the rest of the register.

    That is the case when one amplitude vanishes or the two residual states
    agree up to a phase.
    """
    if d.degenerate:
        return True
    assert d.rest0 is not None and d.rest1 is not None
    return fidelity(d.rest0, d.rest1) >= 1.0 - NORM_TOL


def _pair_blocks(
    s: StateVector, pair: tuple[QubitLabel, QubitLabel]
) -> tuple[tuple[QubitLabel, ...], np.ndarray]:
    """Amplitudes reshaped to (4, rest) with the pair on the leading axes."""
    p, q = pair
    if p == q:
        raise ValueError(f"measurement pair must be two distinct qubits, got {pair}")
    ax_p, ax_q = s.axis(p), s.axis(q)
    rest = tuple(l for l in s.labels if l not in (p, q))
    arr = s.tensor_view()
    arr = np.moveaxis(arr, (ax_p, ax_q), (0, 1))
    return rest, arr.reshape(4, -1)


def _projections(blocks: np.ndarray) -> dict[BellKind, np.ndarray]:
    """Unnormalized projection of each Bell component onto the rest register."""
    return {kind: _BELL_AMPS[kind].conj() @ blocks for kind in KIND_ORDER}


def bell_project(
    s: StateVector, pair: tuple[QubitLabel, QubitLabel], kind: BellKind
) -> tuple[float, StateVector | None]:
    """Project the pair onto one Bell state.

    Returns the Born probability and the renormalized state of the remaining
    qubits; the measured pair leaves the register. The collapsed state keeps
    its phase relative to the projected branch, so weighted branch sums
    reassemble the input. Probabilities below PROB_FLOOR report an impossible
    outcome: (probability, None).
    """
    rest_labels, blocks = _pair_blocks(s, pair)
    projected = _BELL_AMPS[kind].conj() @ blocks
    prob = float(np.sum(np.abs(projected) ** 2))
    prob = min(max(prob, 0.0), 1.0)
    if prob < PROB_FLOOR:
        return prob, None
    return prob, StateVector(rest_labels, projected / np.sqrt(prob))


def bell_measure(
    s: StateVector, pair: tuple[QubitLabel, QubitLabel], rng: np.random.Generator
) -> tuple[BellOutcome, StateVector]:
    """Sample a Bell measurement of the pair with Born-rule probabilities.

    One uniform draw is consumed per call; the outcome is chosen by inverse
    CDF over KIND_ORDER, so fixed seeds give fixed outcome sequences.
    """
    rest_labels, blocks = _pair_blocks(s, pair)
    projections = _projections(blocks)
    probs = {k: float(np.sum(np.abs(v) ** 2)) for k, v in projections.items()}
    u = rng.random()
    chosen: BellKind | None = None
    cumulative = 0.0
    for kind in KIND_ORDER:
        if probs[kind] < PROB_FLOOR:
            continue
        cumulative += probs[kind]
        if u < cumulative:
            chosen = kind
            break
    if chosen is None:
        chosen = max(KIND_ORDER, key=lambda k: probs[k])
    prob = probs[chosen]
    collapsed = StateVector(rest_labels, projections[chosen] / np.sqrt(prob))
    return BellOutcome(kind=chosen, pair=(pair[0], pair[1]), probability=prob), collapsed
