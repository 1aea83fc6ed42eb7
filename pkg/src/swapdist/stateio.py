"""JSON documents for states, plans, transcripts and ledgers.

State files: {"labels": [int, ...], "amplitudes": [[re, im], ...]} with
amplitudes in register bit order (labels[0] = most significant bit), written
at full double precision.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .protocol import (
    DistributionPlan,
    ResourceLedger,
    SwapStep,
    TranscriptEntry,
    assemble_plan,
)
from .states import NORM_TOL, QubitLabel, StateVector


def state_to_doc(s: StateVector) -> dict[str, Any]:
    return {
        "labels": [int(l) for l in s.labels],
        "amplitudes": [[float(a.real), float(a.imag)] for a in s.amps],
    }


def state_from_doc(doc: dict[str, Any]) -> StateVector:
    """Parse and validate a state document; rejects non-normalized input."""
    try:
        labels = tuple(int(l) for l in doc["labels"])
        pairs = doc["amplitudes"]
        amps = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed state document: {e}") from None
    if len(amps) != 1 << len(labels):
        raise ValueError(
            f"state document has {len(amps)} amplitudes for {len(labels)} labels"
        )
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if abs(norm2 - 1.0) > NORM_TOL:
        raise ValueError(f"state document is not normalized: sum |amp|^2 = {norm2!r}")
    return StateVector(labels, amps)


def save_state(s: StateVector, path: str | Path) -> None:
    Path(path).write_text(json.dumps(state_to_doc(s), indent=2) + "\n")


def load_state(path: str | Path) -> StateVector:
    return state_from_doc(json.loads(Path(path).read_text()))


def step_to_doc(step: SwapStep) -> dict[str, Any]:
    return {
        "source": int(step.source),
        "mu": int(step.anchor),
        "nu": int(step.remote),
        "receiver": step.receiver,
    }


def step_from_doc(doc: dict[str, Any]) -> SwapStep:
    try:
        return SwapStep(
            source=int(doc["source"]),
            anchor=int(doc["mu"]),
            remote=int(doc["nu"]),
            receiver=str(doc["receiver"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed plan step: {e}") from None


def plan_to_doc(plan: DistributionPlan) -> dict[str, Any]:
    return {
        "sender": plan.sender.name,
        "steps": [step_to_doc(s) for s in plan.steps],
    }


def plan_from_doc(doc: dict[str, Any], register_labels: Sequence[QubitLabel]) -> DistributionPlan:
    """Build a plan for the given register from its JSON document."""
    steps = [step_from_doc(d) for d in doc.get("steps", [])]
    return assemble_plan(register_labels, steps, sender_name=str(doc.get("sender", "alice")))


def load_plan(path: str | Path, register_labels: Sequence[QubitLabel]) -> DistributionPlan:
    return plan_from_doc(json.loads(Path(path).read_text()), register_labels)


def transcript_to_doc(entries: Sequence[TranscriptEntry]) -> list[dict[str, Any]]:
    return [
        {
            "step": step_to_doc(e.step),
            "outcome": e.outcome.value,
            "cbits": e.classical_bits,
            "correction": e.correction.value,
        }
        for e in entries
    ]


def ledger_to_doc(ledger: ResourceLedger) -> dict[str, Any]:
    return {
        "ebits": ledger.ebits,
        "cbits_forward": ledger.cbits_forward,
        "cbits_backward": ledger.cbits_backward,
        "baseline": ledger.baseline(),
    }
