"""Pydantic request/response models for the HTTP service and CLI client."""
from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

from .presets import PRESET_NAMES, RANDOM_SOURCE

# The service caps protocol registers well below the raw amplitude-array
# limit; the live register is n + 2 qubits during a step.
MAX_PROTOCOL_QUBITS = 20

_SOURCES = PRESET_NAMES + (RANDOM_SOURCE,)


class StateDocument(BaseModel):
    """State file payload: labels plus [re, im] amplitude pairs in bit order."""

    labels: list[int]
    amplitudes: list[tuple[float, float]]


class PlanStepModel(BaseModel):
    source: int
    mu: int
    nu: int
    receiver: str


class PlanDocument(BaseModel):
    sender: str = "alice"
    steps: list[PlanStepModel]


class RunRequest(BaseModel):
    """Configuration for seeded distribution runs.

    Exactly one of ``preset`` (ghz, w, bell, product, random-haar) or an
    inline ``state`` document selects the input; ``plan`` overrides the
    generated round-robin plan over ``parties`` receivers.
    """

    seed: int = Field(default=0, ge=0, lt=2**64)
    n: int | None = Field(default=None, ge=1, le=MAX_PROTOCOL_QUBITS)
    preset: str | None = None
    state: StateDocument | None = None
    plan: PlanDocument | None = None
    parties: int = Field(default=1, ge=1)
    trials: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check(self) -> "RunRequest":
        if (self.preset is None) == (self.state is None):
            raise ValueError("provide exactly one of preset or state")
        if self.preset is not None:
            if self.preset not in _SOURCES:
                raise ValueError(f"unknown preset {self.preset!r}; choose from {_SOURCES}")
            if self.n is None:
                raise ValueError("n is required when using a preset")
        if self.state is not None:
            n = len(self.state.labels)
            if not 1 <= n <= MAX_PROTOCOL_QUBITS:
                raise ValueError(f"inline state must have 1..{MAX_PROTOCOL_QUBITS} qubits")
            if self.n is not None and self.n != n:
                raise ValueError(f"n={self.n} does not match the {n}-qubit inline state")
        if self.plan is None and self.parties > self.register_size():
            raise ValueError(f"{self.parties} parties for {self.register_size()} qubits")
        return self

    def register_size(self) -> int:
        if self.state is not None:
            return len(self.state.labels)
        assert self.n is not None
        return self.n


class VerifyRequest(RunRequest):
    """Verification configuration; ``trials`` is the sampled-word count used
    when the plan is too large to enumerate exhaustively."""

    trials: int = Field(default=100, ge=1)


class GenRequest(BaseModel):
    kind: str
    n: int = Field(..., ge=1, le=MAX_PROTOCOL_QUBITS)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check(self) -> "GenRequest":
        if self.kind not in _SOURCES:
            raise ValueError(f"unknown kind {self.kind!r}; choose from {_SOURCES}")
        if self.kind == "bell" and self.n != 2:
            raise ValueError("the bell preset is a 2-qubit state")
        return self


class ConfigEcho(BaseModel):
    """Compact echo of the effective configuration (inline bodies elided)."""

    seed: int
    n: int
    source: str
    plan: str
    parties: int
    trials: int


class BaselineModel(BaseModel):
    ebits: int
    cbits_forward: int
    cbits_backward: int


class LedgerModel(BaseModel):
    ebits: int
    cbits_forward: int
    cbits_backward: int
    baseline: BaselineModel


class TranscriptEntryModel(BaseModel):
    step: PlanStepModel
    outcome: str
    cbits: str
    correction: str


class TrialReport(BaseModel):
    trial: int
    fidelity: float
    passed: bool
    transcript: list[TranscriptEntryModel]
    ledger: LedgerModel


class RunReport(BaseModel):
    generated_at: str
    config: ConfigEcho
    trials: list[TrialReport]
    outcome_frequencies: dict[str, float]
    all_passed: bool


class BranchCheckModel(BaseModel):
    outcome: str
    probability: float
    fidelity_after_correction: float


class CorrectionTableModel(BaseModel):
    """Oracle check of one step's four branches, plus the teleportation
    special case: when the source qubit is unentangled, the receiver marginal
    must equal the source marginal (max entrywise delta reported)."""

    source: int
    teleportation_reduction: bool
    marginal_delta: float | None
    branches: list[BranchCheckModel]
    passed: bool


class OutcomeWordModel(BaseModel):
    outcomes: list[str]
    probability: float
    fidelity: float
    passed: bool


class VerifyReport(BaseModel):
    generated_at: str
    config: ConfigEcho
    mode: str
    correction_tables: list[CorrectionTableModel]
    outcome_words: list[OutcomeWordModel]
    all_passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
