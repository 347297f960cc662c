"""Qutrit construction of n-qubit controlled-phase gates and its cavity-QED realization."""

from .errors import QutritGateError
from .gates import (
    GateKind,
    GateSpec,
    ShiftDirection,
    apply_gate,
    conditional_swap_gate,
    controlled_phase_gate,
    gate_matrix,
    level_shift_gate,
    qutrit_phase_gate,
)
from .register import (
    PureState,
    Register,
    apply_local_operator,
    basis_state,
    index_of,
    inner_product,
    labels_of,
    make_register,
    qutrit_register,
)
from .synthesis import (
    GateSequence,
    VerificationReport,
    apply_sequence,
    build_sequence,
    composed_unitary,
    verify_against_target,
    worked_example_trace,
)

__version__ = "0.1.0"
