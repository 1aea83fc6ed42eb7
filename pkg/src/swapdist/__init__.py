"""State distribution by entanglement swapping: core simulator, oracle,
HTTP service and CLI."""

__version__ = "0.1.0"

from .bell import (
    KIND_ORDER,
    BellKind,
    BellOutcome,
    DecompositionResult,
    bell_measure,
    bell_project,
    decompose,
    is_product_about,
    make_bell,
)
from .oracle import SwapExpansion, expand_swap, verify_correction_table
from .presets import ghz_state, preset_state, product_plus_state, random_state, w_state
from .protocol import (
    DistributionPlan,
    DistributionResult,
    Party,
    ResourceLedger,
    SwapStep,
    TranscriptEntry,
    build_plan,
    correction_for,
    decode_classical,
    distribute,
    distribute_forced,
    encode_classical,
    measured_pair_state,
    partial_distribution_reduced,
    swap_step,
    swap_step_forced,
)
from .states import (
    MAX_QUBITS,
    NORM_TOL,
    PROB_FLOOR,
    DensityMatrix,
    PauliOp,
    QubitLabel,
    StateVector,
    apply_pauli,
    fidelity,
    make_basis_state,
    permute_to,
    reduced_density,
    relabel,
    tensor,
)

__all__ = [
    "__version__",
    "BellKind",
    "BellOutcome",
    "DecompositionResult",
    "DensityMatrix",
    "DistributionPlan",
    "DistributionResult",
    "KIND_ORDER",
    "MAX_QUBITS",
    "NORM_TOL",
    "PROB_FLOOR",
    "Party",
    "PauliOp",
    "QubitLabel",
    "ResourceLedger",
    "StateVector",
    "SwapExpansion",
    "SwapStep",
    "TranscriptEntry",
    "apply_pauli",
    "bell_measure",
    "bell_project",
    "build_plan",
    "correction_for",
    "decode_classical",
    "decompose",
    "distribute",
    "distribute_forced",
    "encode_classical",
    "expand_swap",
    "fidelity",
    "ghz_state",
    "is_product_about",
    "make_basis_state",
    "make_bell",
    "measured_pair_state",
    "partial_distribution_reduced",
    "permute_to",
    "preset_state",
    "product_plus_state",
    "random_state",
    "reduced_density",
    "relabel",
    "swap_step",
    "swap_step_forced",
    "tensor",
    "verify_correction_table",
    "w_state",
]
