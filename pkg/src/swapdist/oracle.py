"""Brute-force verifier for the swap step, independent of the measurement path.

Given a register state and one source qubit, the product of that state with
a fresh (anchor, remote) singlet expands into exactly four Bell components
of the (source, anchor) pair, each with coefficient of magnitude 1/2:

    + 1/2 * VARPHI_PLUS  (x) ( amp0*|1_remote>|rest0> - amp1*|0_remote>|rest1> )
    + 1/2 * VARPHI_MINUS (x) ( amp0*|1_remote>|rest0> + amp1*|0_remote>|rest1> )
    - 1/2 * PHI_PLUS     (x) ( amp0*|0_remote>|rest0> - amp1*|1_remote>|rest1> )
    - 1/2 * PHI_MINUS    (x) ( amp0*|0_remote>|rest0> + amp1*|1_remote>|rest1> )

This module materializes those branches literally from the single-qubit
split (the minus signs on the PHI terms live in the coefficients, keeping
each branch state exactly as written) and never calls bell_project or
swap_step; agreement between the two code paths is what the tests check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import KIND_ORDER, BellKind, decompose, make_bell
from .protocol import correction_for
from .states import (
    NORM_TOL,
    PROB_FLOOR,
    QubitLabel,
    StateVector,
    apply_pauli,
    fidelity,
    permute_to,
    relabel,
)


@dataclass(frozen=True, eq=False)
class SwapExpansion:
    """The four-branch expansion of state (x) singlet about one source qubit.

    branches maps each Bell outcome of the (source, anchor) measurement to
    (coefficient, branch state over (remote, rest...)). Coefficients have
    magnitude 1/2 and their squared magnitudes sum to 1.
    """

    branches: dict[BellKind, tuple[complex, StateVector]]
    source: QubitLabel
    anchor: QubitLabel
    remote: QubitLabel


def _single_qubit_split(
    state: StateVector, source: QubitLabel
) -> tuple[float, float, np.ndarray, np.ndarray, tuple[QubitLabel, ...]]:
    """amp0, amp1 and the (possibly zero) normalized residual blocks."""
    if state.n_qubits == 1:
        # One-qubit register: the residuals are zero-qubit scalars carrying
        # the amplitude phases.
        c0, c1 = state.amps
        amp0, amp1 = abs(c0), abs(c1)
        rest0 = np.array([c0 / amp0]) if amp0 * amp0 >= PROB_FLOOR else np.zeros(1, complex)
        rest1 = np.array([c1 / amp1]) if amp1 * amp1 >= PROB_FLOOR else np.zeros(1, complex)
        return float(amp0), float(amp1), rest0, rest1, ()
    d = decompose(state, source)
    dim = 1 << (state.n_qubits - 1)
    rest0 = d.rest0.amps if d.rest0 is not None else np.zeros(dim, complex)
    rest1 = d.rest1.amps if d.rest1 is not None else np.zeros(dim, complex)
    rest_labels = tuple(l for l in state.labels if l != source)
    return d.amp0, d.amp1, rest0, rest1, rest_labels


def expand_swap(
    state: StateVector, source: QubitLabel, anchor: QubitLabel, remote: QubitLabel
) -> SwapExpansion:
    """Expand state (x) singlet(anchor, remote) over Bell outcomes of (source, anchor)."""
    if state.n_qubits == 0:
        raise ValueError("cannot expand an empty register")
    if len({source, anchor, remote}) != 3:
        raise ValueError(f"source/anchor/remote must be distinct, got {(source, anchor, remote)}")
    if source not in state.labels:
        raise ValueError(f"source {source} is not a register qubit")
    for label in (anchor, remote):
        if label in state.labels:
            raise ValueError(f"pair qubit {label} collides with the register")

    amp0, amp1, rest0, rest1, rest_labels = _single_qubit_split(state, source)
    zero_block = amp0 * rest0
    one_block = amp1 * rest1
    branch_labels = (remote, *rest_labels)

    def branch(remote_for_zero: int, sign: float) -> StateVector:
        # remote_for_zero: remote-qubit bit that carries the amp0 block.
        lo, hi = (zero_block, sign * one_block) if remote_for_zero == 0 else (
            sign * one_block,
            zero_block,
        )
        return StateVector(branch_labels, np.concatenate([lo, hi]))

    half = complex(0.5)
    branches = {
        BellKind.VARPHI_PLUS: (half, branch(1, -1.0)),
        BellKind.VARPHI_MINUS: (half, branch(1, +1.0)),
        BellKind.PHI_PLUS: (-half, branch(0, -1.0)),
        BellKind.PHI_MINUS: (-half, branch(0, +1.0)),
    }
    return SwapExpansion(branches=branches, source=source, anchor=anchor, remote=remote)


@dataclass(frozen=True)
class BranchCheck:
    outcome: BellKind
    probability: float
    fidelity_after_correction: float


@dataclass(frozen=True)
class CorrectionReport:
    branches: tuple[BranchCheck, ...]
    passed: bool

    def to_doc(self) -> dict:
        return {
            "branches": [
                {
                    "outcome": b.outcome.value,
                    "probability": b.probability,
                    "fidelity_after_correction": b.fidelity_after_correction,
                }
                for b in self.branches
            ],
            "passed": self.passed,
        }


def verify_correction_table(
    state: StateVector, source: QubitLabel, anchor: QubitLabel, remote: QubitLabel
) -> CorrectionReport:
    """Check that each branch, after its published Pauli, matches the input.

    For every Bell outcome the corresponding correction is applied on the
    remote qubit of the oracle branch; the result must equal the input state
    with source relabeled to remote. Failures are reported, not raised.
    """
    expansion = expand_swap(state, source, anchor, remote)
    target = relabel(state, {source: remote})
    checks = []
    for kind in KIND_ORDER:
        coeff, branch_state = expansion.branches[kind]
        corrected = apply_pauli(branch_state, remote, correction_for(kind))
        checks.append(
            BranchCheck(
                outcome=kind,
                probability=float(abs(coeff) ** 2),
                fidelity_after_correction=fidelity(corrected, target),
            )
        )
    passed = all(
        c.fidelity_after_correction >= 1.0 - NORM_TOL and abs(c.probability - 0.25) <= NORM_TOL
        for c in checks
    )
    return CorrectionReport(branches=tuple(checks), passed=passed)


def reconstruct(expansion: SwapExpansion, state: StateVector) -> StateVector:
    """Reassemble sum_k coeff_k * Bell_k (x) branch_k; equals state (x) singlet."""
    total: np.ndarray | None = None
    order: tuple[QubitLabel, ...] | None = None
    for kind in KIND_ORDER:
        coeff, branch_state = expansion.branches[kind]
        pair = make_bell(kind, (expansion.source, expansion.anchor))
        term_labels = pair.labels + branch_state.labels
        term = coeff * np.kron(pair.amps, branch_state.amps)
        if total is None:
            total, order = term, term_labels
        else:
            total = total + term
    assert total is not None and order is not None
    recombined = StateVector(order, total)
    return permute_to(recombined, state.labels + (expansion.anchor, expansion.remote))
