"""Distribution protocol engine.

One swap step moves the state of one source qubit onto a remote qubit:
the sender holds the source and one half of a fresh singlet (the anchor),
the receiver holds the other half (the remote). The sender Bell-measures
(source, anchor), sends the outcome as two classical bits, and the receiver
applies the matching Pauli on the remote qubit. The sender then rotates the
measured pair back to a singlet. Repeating the step once per qubit
distributes the whole register; measured qubits leave the live register,
which therefore never grows beyond n + 2 qubits.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bell import KIND_ORDER, BellKind, BellOutcome, bell_measure, bell_project, make_bell
from .states import (
    DensityMatrix,
    PauliOp,
    QubitLabel,
    StateVector,
    apply_pauli,
    permute_to,
    reduced_density,
    tensor,
)

# Bell outcome -> Pauli the receiver applies on the remote qubit. The same
# table, applied by the sender on the anchor, rotates the measured pair back
# to a singlet.
_CORRECTION: dict[BellKind, PauliOp] = {
    BellKind.VARPHI_PLUS: PauliOp.ZX,
    BellKind.VARPHI_MINUS: PauliOp.X,
    BellKind.PHI_PLUS: PauliOp.Z,
    BellKind.PHI_MINUS: PauliOp.I,
}

_CBITS_ENCODE: dict[BellKind, str] = {
    BellKind.VARPHI_PLUS: "00",
    BellKind.VARPHI_MINUS: "01",
    BellKind.PHI_PLUS: "10",
    BellKind.PHI_MINUS: "11",
}
_CBITS_DECODE = {code: kind for kind, code in _CBITS_ENCODE.items()}

# Published cost of a general-purpose nonlocal swap, kept as a comparison
# constant: per swap, two shared pairs plus two classical bits each way.
BASELINE_EBITS_PER_SWAP = 2
BASELINE_CBITS_FORWARD_PER_SWAP = 2
BASELINE_CBITS_BACKWARD_PER_SWAP = 2


def correction_for(outcome: BellKind) -> PauliOp:
    """Pauli the receiver must apply for a given Bell outcome."""
    return _CORRECTION[outcome]


def encode_classical(outcome: BellKind) -> str:
    """Two-bit message naming a Bell outcome."""
    return _CBITS_ENCODE[outcome]


def decode_classical(code: str) -> BellKind:
    """Inverse of encode_classical; raises on anything but the four codes."""
    try:
        return _CBITS_DECODE[code]
    except KeyError:
        raise ValueError(f"invalid 2-bit outcome code: {code!r}") from None


@dataclass(frozen=True)
class Party:
    name: str
    held_qubits: frozenset[QubitLabel]


@dataclass(frozen=True)
class SwapStep:
    """One qubit hop: measure (source, anchor), correct on remote."""

    source: QubitLabel
    anchor: QubitLabel
    remote: QubitLabel
    receiver: str


@dataclass(frozen=True)
class DistributionPlan:
    steps: tuple[SwapStep, ...]
    sender: Party
    receivers: tuple[Party, ...]

    def receiver(self, name: str) -> Party:
        for party in self.receivers:
            if party.name == name:
                return party
        raise ValueError(f"no receiver named {name!r}")


@dataclass(frozen=True)
class TranscriptEntry:
    """Record of one executed swap step."""

    step: SwapStep
    outcome: BellKind
    classical_bits: str
    correction: PauliOp
    singlet_restore: PauliOp


@dataclass(frozen=True)
class ResourceLedger:
    """Entanglement and classical-communication cost of a run."""

    ebits: int
    cbits_forward: int
    cbits_backward: int
    steps: int

    @classmethod
    def for_steps(cls, steps: int) -> "ResourceLedger":
        return cls(ebits=steps, cbits_forward=2 * steps, cbits_backward=0, steps=steps)

    def baseline(self) -> dict[str, int]:
        """Cost of the same run built from general nonlocal swaps."""
        return {
            "ebits": BASELINE_EBITS_PER_SWAP * self.steps,
            "cbits_forward": BASELINE_CBITS_FORWARD_PER_SWAP * self.steps,
            "cbits_backward": BASELINE_CBITS_BACKWARD_PER_SWAP * self.steps,
        }


@dataclass(frozen=True, eq=False)
class DistributionResult:
    final_state: StateVector
    transcript: tuple[TranscriptEntry, ...]
    ledger: ResourceLedger
    plan: DistributionPlan

    def holdings(self) -> dict[str, frozenset[QubitLabel]]:
        """Final qubit ownership by party name."""
        out = {self.plan.sender.name: self.plan.sender.held_qubits}
        for party in self.plan.receivers:
            out[party.name] = party.held_qubits
        return out


def validate_plan(plan: DistributionPlan, initial: StateVector) -> None:
    """Raise ValueError unless the plan is executable against ``initial``."""
    if len(plan.receivers) > initial.n_qubits:
        raise ValueError(
            f"{len(plan.receivers)} receivers for {initial.n_qubits} qubits; need M <= N"
        )
    names = [p.name for p in plan.receivers]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate receiver names: {names}")
    if plan.sender.name in names:
        raise ValueError(f"sender {plan.sender.name!r} cannot also be a receiver")

    sources = [s.source for s in plan.steps]
    if len(set(sources)) != len(sources):
        raise ValueError(f"a source qubit appears in more than one step: {sources}")
    for label in sources:
        if label not in initial.labels:
            raise ValueError(f"step source {label} is not a register qubit")

    pair_labels = [l for s in plan.steps for l in (s.anchor, s.remote)]
    if len(set(pair_labels)) != len(pair_labels):
        raise ValueError("each Bell pair may be consumed by exactly one step")
    clashes = set(pair_labels) & set(initial.labels)
    if clashes:
        raise ValueError(f"pair labels collide with register qubits: {sorted(clashes)}")

    for step in plan.steps:
        if len({step.source, step.anchor, step.remote}) != 3:
            raise ValueError(f"step qubits must be distinct: {step}")
        receiver = plan.receiver(step.receiver)
        if step.remote not in receiver.held_qubits:
            raise ValueError(f"remote {step.remote} is not held by {receiver.name!r}")
        if step.anchor not in plan.sender.held_qubits:
            raise ValueError(f"anchor {step.anchor} is not held by the sender")

    held = [plan.sender.held_qubits, *(p.held_qubits for p in plan.receivers)]
    for a, b in itertools.combinations(range(len(held)), 2):
        both = held[a] & held[b]
        if both:
            raise ValueError(f"qubits held by two parties at once: {sorted(both)}")


def _attach_pair(state: StateVector, step: SwapStep) -> StateVector:
    if step.source not in state.labels:
        raise ValueError(f"source {step.source} is not in the live register")
    for label in (step.anchor, step.remote):
        if label in state.labels:
            raise ValueError(f"pair qubit {label} already in the register (pair consumed?)")
    if len({step.source, step.anchor, step.remote}) != 3:
        raise ValueError(f"step qubits must be distinct: {step}")
    return tensor(state, make_bell(BellKind.PHI_MINUS, (step.anchor, step.remote)))


def _finish_step(
    state: StateVector, step: SwapStep, outcome: BellOutcome, collapsed: StateVector
) -> tuple[StateVector, TranscriptEntry]:
    correction = correction_for(outcome.kind)
    corrected = apply_pauli(collapsed, step.remote, correction)
    new_order = tuple(step.remote if l == step.source else l for l in state.labels)
    entry = TranscriptEntry(
        step=step,
        outcome=outcome.kind,
        classical_bits=encode_classical(outcome.kind),
        correction=correction,
        singlet_restore=correction,
    )
    return permute_to(corrected, new_order), entry


def swap_step(
    state: StateVector, step: SwapStep, rng: np.random.Generator
) -> tuple[StateVector, TranscriptEntry]:
    """Run one swap step: attach a fresh singlet, measure, correct.

    The returned register contains the remote qubit in the source's slot;
    source and anchor leave the register as a consumed (restored) pair.
    """
    working = _attach_pair(state, step)
    outcome, collapsed = bell_measure(working, (step.source, step.anchor), rng)
    return _finish_step(state, step, outcome, collapsed)


def swap_step_forced(
    state: StateVector, step: SwapStep, kind: BellKind
) -> tuple[StateVector, TranscriptEntry, float]:
    """Like swap_step but projecting on a chosen outcome; returns its probability."""
    working = _attach_pair(state, step)
    prob, collapsed = bell_project(working, (step.source, step.anchor), kind)
    if collapsed is None:
        raise ValueError(f"outcome {kind.value} has probability {prob}; cannot project")
    outcome = BellOutcome(kind=kind, pair=(step.source, step.anchor), probability=prob)
    new_state, entry = _finish_step(state, step, outcome, collapsed)
    return new_state, entry, prob


def measured_pair_state(entry: TranscriptEntry) -> StateVector:
    """State of the consumed (source, anchor) pair after the sender's restore."""
    pair = make_bell(entry.outcome, (entry.step.source, entry.step.anchor))
    return apply_pauli(pair, entry.step.anchor, entry.singlet_restore)


def distribute(
    initial: StateVector, plan: DistributionPlan, rng: np.random.Generator
) -> DistributionResult:
    """Execute every step of the plan in order.

    When the plan covers all register qubits the final state equals the
    input with each source relabeled to its remote, up to global phase.
    """
    validate_plan(plan, initial)
    state = initial
    transcript: list[TranscriptEntry] = []
    for step in plan.steps:
        state, entry = swap_step(state, step, rng)
        transcript.append(entry)
    return DistributionResult(
        final_state=state,
        transcript=tuple(transcript),
        ledger=ResourceLedger.for_steps(len(plan.steps)),
        plan=plan,
    )


def distribute_forced(
    initial: StateVector, plan: DistributionPlan, outcomes: Sequence[BellKind]
) -> tuple[DistributionResult, float]:
    """Execute the plan projecting each step on a chosen outcome.

    Returns the result plus the probability of that outcome word (the
    product of per-step branch probabilities).
    """
    validate_plan(plan, initial)
    if len(outcomes) != len(plan.steps):
        raise ValueError(f"need {len(plan.steps)} outcomes, got {len(outcomes)}")
    state = initial
    transcript: list[TranscriptEntry] = []
    word_prob = 1.0
    for step, kind in zip(plan.steps, outcomes):
        state, entry, prob = swap_step_forced(state, step, kind)
        transcript.append(entry)
        word_prob *= prob
    result = DistributionResult(
        final_state=state,
        transcript=tuple(transcript),
        ledger=ResourceLedger.for_steps(len(plan.steps)),
        plan=plan,
    )
    return result, word_prob


def enumerate_outcome_words(n_steps: int) -> Iterable[tuple[BellKind, ...]]:
    """All 4**n_steps outcome words in KIND_ORDER lexicographic order."""
    return itertools.product(KIND_ORDER, repeat=n_steps)


def partial_distribution_reduced(
    initial: StateVector, plan: DistributionPlan, rng: np.random.Generator
) -> DensityMatrix:
    """Distribute a strict subset of the register and return the receivers' state.

    The reduced density matrix of the distributed qubits (in step order)
    equals the partial trace of the input over the same sources; it is mixed
    whenever the distributed subset is entangled with what stays behind.
    """
    sources = {s.source for s in plan.steps}
    if sources == set(initial.labels):
        raise ValueError("plan covers the whole register; use distribute")
    result = distribute(initial, plan, rng)
    remotes = [s.remote for s in plan.steps]
    return reduced_density(result.final_state, remotes)


_RECEIVER_NAMES = ("bob", "charlie", "diane", "edgar", "fay", "gwen", "hugo", "iris")


def _receiver_name(index: int) -> str:
    if index < len(_RECEIVER_NAMES):
        return _RECEIVER_NAMES[index]
    return f"party{index + 1}"


def build_plan(
    labels: Sequence[QubitLabel],
    n_parties: int = 1,
    sender_name: str = "alice",
    sources: Sequence[QubitLabel] | None = None,
) -> DistributionPlan:
    """Round-robin plan: source k goes to party k mod n_parties.

    Anchor/remote labels are minted above the register's maximum label, one
    fresh singlet per step. ``sources`` defaults to the whole register.
    """
    if n_parties < 1:
        raise ValueError("need at least one receiving party")
    chosen = list(labels) if sources is None else list(sources)
    for label in chosen:
        if label not in labels:
            raise ValueError(f"source {label} is not a register qubit")
    if n_parties > len(labels):
        raise ValueError(f"{n_parties} parties for {len(labels)} qubits; need M <= N")
    base = max(labels) + 1 if labels else 1
    steps = []
    for k, source in enumerate(chosen):
        steps.append(
            SwapStep(
                source=source,
                anchor=base + 2 * k,
                remote=base + 2 * k + 1,
                receiver=_receiver_name(k % n_parties),
            )
        )
    return assemble_plan(labels, steps, sender_name)


def assemble_plan(
    labels: Sequence[QubitLabel], steps: Sequence[SwapStep], sender_name: str = "alice"
) -> DistributionPlan:
    """Build parties from explicit steps: sender holds the register and anchors,
    each receiver holds its remotes."""
    receiver_names = []
    for step in steps:
        if step.receiver not in receiver_names:
            receiver_names.append(step.receiver)
    receivers = tuple(
        Party(name, frozenset(s.remote for s in steps if s.receiver == name))
        for name in receiver_names
    )
    sender = Party(sender_name, frozenset(labels) | frozenset(s.anchor for s in steps))
    return DistributionPlan(steps=tuple(steps), sender=sender, receivers=receivers)
