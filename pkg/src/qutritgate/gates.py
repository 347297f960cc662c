"""Elementary qutrit gates of the auxiliary-level controlled-phase construction.

Two-site matrices are 9x9 in the ordered pair ``(j, k)``: the first listed
site is the more significant digit, so ``|a_j 1_k>`` is row ``2*3 + 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, GateKindError, RangeError, ShapeError
from .register import LEVEL_0, LEVEL_1, LEVEL_A, PureState, apply_local_operator

UNITARY_TOL = 1e-12


class GateKind(enum.Enum):
    LEVEL_SHIFT = "level_shift"
    CONDITIONAL_SWAP = "conditional_swap"
    CONTROLLED_PHASE = "controlled_phase"
    QUTRIT_PHASE = "qutrit_phase"


class ShiftDirection(enum.Enum):
    ONE_TO_A = "one_to_a"
    A_TO_ONE = "a_to_one"


@dataclass(frozen=True, eq=False)
class GateSpec:
    kind: GateKind
    sites: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)
    phase: float | None = None
    name: str = ""

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        m = self.matrix
        return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def _pair(x: int, y: int) -> int:
    return 3 * x + y


def level_shift_gate(site: int, direction: ShiftDirection = ShiftDirection.ONE_TO_A) -> GateSpec:
    """Exchange |1> and |a> on one qutrit, fixing |0>.

    Both directions are the same self-inverse permutation; the direction only
    names which half of the exchange the construction relies on.
    """
    direction = ShiftDirection(direction)
    m = np.zeros((3, 3), dtype=complex)
    m[LEVEL_0, LEVEL_0] = 1
    m[LEVEL_A, LEVEL_1] = 1
    m[LEVEL_1, LEVEL_A] = 1
    name = "L" if direction is ShiftDirection.ONE_TO_A else "M"
    return GateSpec(GateKind.LEVEL_SHIFT, (site,), m, name=f"{name}{site}")


def conditional_swap_gate(j: int, k: int) -> GateSpec:
    """|a_j 1_k> -> |1_j a_k>, |1_j a_k> -> -|a_j 1_k>, identity elsewhere."""
    if j == k:
        raise ArgumentError("conditional swap needs two distinct sites")
    m = np.eye(9, dtype=complex)
    fwd, bwd = _pair(LEVEL_A, LEVEL_1), _pair(LEVEL_1, LEVEL_A)
    m[fwd, fwd] = m[bwd, bwd] = 0
    m[bwd, fwd] = 1
    m[fwd, bwd] = -1
    return GateSpec(GateKind.CONDITIONAL_SWAP, (j, k), m, name=f"U{j},{k}")


def controlled_phase_gate(j: int, k: int, phi: float) -> GateSpec:
    """Multiply only the |a_j 1_k> amplitude by exp(i phi)."""
    if j == k:
        raise ArgumentError("controlled phase needs two distinct sites")
    diag = np.ones(9, dtype=complex)
    diag[_pair(LEVEL_A, LEVEL_1)] = np.exp(1j * phi)
    return GateSpec(GateKind.CONTROLLED_PHASE, (j, k), np.diag(diag), phase=float(phi), name=f"V{j},{k}")


def qutrit_phase_gate(site: int, level: int, theta: float) -> GateSpec:
    if level not in (LEVEL_0, LEVEL_1, LEVEL_A):
        raise RangeError(f"qutrit level must be 0, 1 or 2, got {level}")
    diag = np.ones(3, dtype=complex)
    diag[level] = np.exp(1j * theta)
    return GateSpec(GateKind.QUTRIT_PHASE, (site,), np.diag(diag), phase=float(theta), name=f"P{site}")


def gate_matrix(g: GateSpec) -> np.ndarray:
    return np.array(g.matrix)


def apply_gate(state: PureState, g: GateSpec) -> PureState:
    reg = state.register
    for s in g.sites:
        if not 0 <= s < reg.n_sites:
            raise ShapeError(f"gate {g.name} addresses site {s} outside a {reg.n_sites}-site register")
        if reg.kind(s) != "qutrit":
            raise GateKindError(f"gate {g.name} needs a qutrit at site {s}, found {reg.kind(s)}")
    return apply_local_operator(state, g.matrix, g.sites)
