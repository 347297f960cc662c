import numpy as np
import pytest
from scipy.linalg import expm

from qutritgate.errors import ArgumentError, GateKindError, RangeError
from qutritgate.gates import (
    ShiftDirection,
    apply_gate,
    conditional_swap_gate,
    controlled_phase_gate,
    gate_matrix,
    level_shift_gate,
    qutrit_phase_gate,
)
from qutritgate.register import basis_state, make_register, qutrit_register, state_from_labels

A = 2


def ket(i, d=3):
    v = np.zeros(d, dtype=complex)
    v[i] = 1
    return v


def pair(x, y):
    return np.kron(ket(x), ket(y))


def test_level_shift_action():
    L = gate_matrix(level_shift_gate(0, ShiftDirection.ONE_TO_A))
    M = gate_matrix(level_shift_gate(0, ShiftDirection.A_TO_ONE))
    assert np.array_equal(L @ ket(0), ket(0))
    assert np.array_equal(L @ ket(1), ket(A))
    assert np.array_equal(M @ L, np.eye(3))
    # permutation matrix: exactly one 1 per row and column
    assert np.array_equal(np.abs(L).sum(axis=0), np.ones(3)) and np.array_equal(np.abs(L).sum(axis=1), np.ones(3))


def test_level_shift_needs_qutrit():
    reg = make_register([4, 3], ["atom", "qutrit"])
    with pytest.raises(GateKindError):
        apply_gate(basis_state(reg, (0, 0)), level_shift_gate(0))


def test_conditional_swap_action():
    U = gate_matrix(conditional_swap_gate(0, 1))
    assert np.array_equal(U @ pair(0, 0), pair(0, 0))
    assert np.array_equal(U @ pair(A, 1), pair(1, A))
    assert np.array_equal(U @ pair(1, A), -pair(A, 1))
    with pytest.raises(ArgumentError):
        conditional_swap_gate(1, 1)


def test_conditional_swap_matches_matrix_exponential():
    gen = np.outer(pair(1, A), pair(A, 1)) - np.outer(pair(A, 1), pair(1, A))
    oracle = expm(np.pi / 2 * gen)
    assert np.max(np.abs(oracle - gate_matrix(conditional_swap_gate(0, 1)))) < 1e-14
    # eigendecomposition route for the same exponential
    w, v = np.linalg.eig(np.pi / 2 * gen)
    oracle2 = (v * np.exp(w)) @ np.linalg.inv(v)
    assert np.max(np.abs(oracle2 - gate_matrix(conditional_swap_gate(0, 1)))) < 1e-12


def test_conditional_swap_determinant():
    assert np.linalg.det(gate_matrix(conditional_swap_gate(0, 1))) == pytest.approx(1.0, abs=1e-14)


def test_conditional_swap_untouched_states_exact():
    U = gate_matrix(conditional_swap_gate(0, 1))
    support = {3 * A + 1, 3 * 1 + A}
    for i in range(9):
        if i not in support:
            col = np.zeros(9)
            col[i] = 1
            assert np.array_equal(U[:, i], col)


def test_conditional_swap_powers():
    U = gate_matrix(conditional_swap_gate(0, 1))
    expected = np.eye(9)
    for i in (3 * A + 1, 3 + A):
        expected[i, i] = -1
    assert np.array_equal(U @ U, expected)
    assert np.array_equal(np.linalg.matrix_power(U, 4), np.eye(9))
    # the reversed-subscript gate undoes the forward one (the chain walks back with it)
    reg = qutrit_register(2)
    for label in [(A, 1), (1, A), (1, 1), (A, 0)]:
        psi = basis_state(reg, label)
        out = apply_gate(apply_gate(psi, conditional_swap_gate(0, 1)), conditional_swap_gate(1, 0))
        assert np.array_equal(out.amplitudes, psi.amplitudes)


def test_controlled_phase():
    assert np.array_equal(gate_matrix(controlled_phase_gate(0, 1, 0.0)), np.eye(9))
    V = gate_matrix(controlled_phase_gate(0, 1, np.pi))
    assert np.allclose(V @ pair(A, 1), -pair(A, 1), atol=1e-15)
    for phi in (0.3, 2.0, np.pi):
        V = gate_matrix(controlled_phase_gate(0, 1, phi))
        assert np.array_equal(V @ pair(A, 0), pair(A, 0))
        off = V - np.diag(np.diag(V))
        assert not off.any()
        assert np.count_nonzero(np.diag(V) != 1) == 1
    with pytest.raises(ArgumentError):
        controlled_phase_gate(2, 2, 1.0)


def test_controlled_phase_composition():
    a, b = 0.7, -2.1
    prod = gate_matrix(controlled_phase_gate(0, 1, a)) @ gate_matrix(controlled_phase_gate(0, 1, b))
    assert np.max(np.abs(prod - gate_matrix(controlled_phase_gate(0, 1, a + b)))) < 1e-15


def test_qutrit_phase():
    assert np.array_equal(gate_matrix(qutrit_phase_gate(0, 2, 0.0)), np.eye(3))
    assert np.max(np.abs(gate_matrix(qutrit_phase_gate(0, 1, 2 * np.pi)) - np.eye(3))) < 1e-12
    reg = qutrit_register(1)
    psi = state_from_labels(reg, {(1,): 1, (A,): 1})
    out = apply_gate(psi, qutrit_phase_gate(0, A, np.pi))
    assert np.allclose(out.amplitudes, np.array([0, 1, -1]) / np.sqrt(2), atol=1e-15)
    with pytest.raises(RangeError):
        qutrit_phase_gate(0, 3, 1.0)


@pytest.mark.parametrize(
    "gate",
    [
        level_shift_gate(0),
        conditional_swap_gate(0, 1),
        conditional_swap_gate(1, 0),
        controlled_phase_gate(0, 1, 1.234),
        qutrit_phase_gate(0, 2, -0.4),
    ],
    ids=lambda g: g.name,
)
def test_every_gate_unitary(gate):
    assert gate.is_unitary(1e-12)
