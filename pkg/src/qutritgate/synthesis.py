"""Build and verify the n-qubit controlled-phase sequence on qutrits.

Qubit ``m`` of the target gate lives on qutrit site ``m - 1`` (0-based).
The sequence is

    L_0, U_{0,1}, ..., U_{n-3,n-2}, V_{n-2,n-1}, U_{n-2,n-3}, ..., U_{1,0}, M_0

so the auxiliary level walks down the chain only while every earlier qubit
was |1>, and exposes |1...1> alone to the final controlled phase.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from .errors import NormalizationError, ResourceError, ShapeError, UnsupportedSizeError
from .gates import (
    GateKind,
    GateSpec,
    ShiftDirection,
    apply_gate,
    conditional_swap_gate,
    controlled_phase_gate,
    level_shift_gate,
)
from .register import (
    LEVEL_A,
    PureState,
    all_labels,
    embed_operator_sparse,
    qutrit_register,
    state_from_amplitudes,
)

MAX_DENSE_QUTRITS = 8


@dataclass(frozen=True)
class GateSequence:
    n: int
    phi: float
    gates: tuple[GateSpec, ...]

    def counts(self) -> dict[str, int]:
        c = Counter(g.kind for g in self.gates)
        return {
            "conditional_swaps": c[GateKind.CONDITIONAL_SWAP],
            "controlled_phases": c[GateKind.CONTROLLED_PHASE],
            "level_shifts": c[GateKind.LEVEL_SHIFT],
        }

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class VerificationReport:
    n: int
    phi: float
    tol: float
    max_elementwise_error: float
    ancilla_leakage: float
    computational_subspace_ok: bool
    counts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.computational_subspace_ok and self.max_elementwise_error <= self.tol


def build_sequence(n: int, phi: float) -> GateSequence:
    if n < 3:
        raise UnsupportedSizeError(f"the qutrit sequence is defined for n >= 3, got n={n}")
    gates = [level_shift_gate(0, ShiftDirection.ONE_TO_A)]
    gates += [conditional_swap_gate(m, m + 1) for m in range(n - 2)]
    gates.append(controlled_phase_gate(n - 2, n - 1, phi))
    gates += [conditional_swap_gate(m + 1, m) for m in reversed(range(n - 2))]
    gates.append(level_shift_gate(0, ShiftDirection.A_TO_ONE))
    return GateSequence(n, float(phi), tuple(gates))


def apply_sequence(state: PureState, seq: GateSequence, record: bool = False):
    """Apply the gates left to right.

    With ``record=True`` returns ``(final_state, [state after each gate])``.
    """
    if state.register.n_sites != seq.n:
        raise ShapeError(f"sequence for n={seq.n} applied to a {state.register.n_sites}-site register")
    trace = []
    for g in seq.gates:
        state = apply_gate(state, g)
        if record:
            trace.append(state)
    return (state, trace) if record else state


def _composed_sparse(seq: GateSequence):
    reg = qutrit_register(seq.n)
    total = sparse.identity(reg.total_dim, dtype=complex, format="csr")
    for g in seq.gates:
        total = embed_operator_sparse(reg, g.matrix, g.sites) @ total
    return total


def composed_unitary(seq: GateSequence) -> np.ndarray:
    """Dense 3^n x 3^n product of the Kronecker-embedded gate matrices."""
    if seq.n > MAX_DENSE_QUTRITS:
        raise ResourceError(f"dense {3 ** seq.n}-dimensional unitary exceeds the n <= {MAX_DENSE_QUTRITS} limit")
    return _composed_sparse(seq).toarray()


def computational_indices(n: int) -> np.ndarray:
    """Flat indices of the 2^n labels with every digit in {0, 1}, in binary order."""
    labels = all_labels(qutrit_register(n))
    mask = np.all(labels < 2, axis=1)
    return np.flatnonzero(mask)


def target_diagonal(n: int, phi: float) -> np.ndarray:
    d = np.ones(2**n, dtype=complex)
    d[-1] = np.exp(1j * phi)
    return d


def verify_against_target(n: int, phi: float, tol: float = 1e-12, seq: GateSequence | None = None) -> VerificationReport:
    """Compare the composed sequence on computational inputs to diag(1, ..., 1, e^{i phi}).

    Phases are compared exactly; there is no global-phase freedom. A custom
    ``seq`` may be passed to check a modified sequence against the target.
    """
    if seq is None:
        seq = build_sequence(n, phi)
    comp = computational_indices(n)
    cols = _composed_sparse(seq)[:, comp].toarray()
    block = cols[comp, :]
    err = float(np.max(np.abs(block - np.diag(target_diagonal(n, phi)))))
    off = np.ones(cols.shape[0], dtype=bool)
    off[comp] = False
    leakage = float(np.max(np.abs(cols[off, :]))) if off.any() else 0.0
    return VerificationReport(
        n=n,
        phi=float(phi),
        tol=float(tol),
        max_elementwise_error=err,
        ancilla_leakage=leakage,
        computational_subspace_ok=leakage <= tol,
        counts=seq.counts(),
    )


def computational_state(n: int, alpha: Sequence[complex]) -> PureState:
    """Embed 2^n qubit amplitudes (binary order, qubit 1 most significant) into n qutrits."""
    alpha = np.asarray(alpha, dtype=complex).reshape(-1)
    if alpha.shape[0] != 2**n:
        raise ShapeError(f"expected {2 ** n} coefficients, got {alpha.shape[0]}")
    reg = qutrit_register(n)
    amps = np.zeros(reg.total_dim, dtype=complex)
    amps[computational_indices(n)] = alpha
    try:
        return state_from_amplitudes(reg, amps)
    except NormalizationError as exc:
        raise NormalizationError(f"coefficients must be normalized: {exc}") from None


def worked_example_trace(alpha: Sequence[complex], phi: float) -> list[PureState]:
    """Three-qubit walkthrough: the state after L_0, U_{0,1}, V_{1,2}, U_{1,0}, M_0."""
    state = computational_state(3, alpha)
    _, trace = apply_sequence(state, build_sequence(3, phi), record=True)
    return trace


def auxiliary_occupancy(state: PureState, tol: float = 1e-12) -> int:
    """Largest number of sites simultaneously in |a> over the populated labels."""
    labels = all_labels(state.register)
    populated = np.abs(state.amplitudes) > tol
    if not populated.any():
        return 0
    return int(np.max(np.sum(labels[populated] == LEVEL_A, axis=1)))
