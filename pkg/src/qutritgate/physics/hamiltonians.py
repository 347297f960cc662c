"""Cavity-QED Hamiltonians from the full four-level model down to the vacuum sector.

Registers: ``n_atoms`` atomic sites followed by one cavity site of dim
``fock_cutoff + 1``. Four-level atoms carry |0>, |1>, |a>, |r>; with |r>
eliminated the atoms are qutrits.

The time-dependent models only oscillate at the detunings, so each has a
diagonal frame generator ``K`` with ``H(t) = exp(-iKt) H(0) exp(iKt)``.
That gives an exact propagator ``exp(-iKt) exp(-i(H(0) - K)t)`` which is
what long gate durations use.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce

import numpy as np

from ..errors import ShapeError
from ..register import LEVEL_1, LEVEL_A, LEVEL_R, Register, all_labels, index_of, make_register
from .params import DerivedParams, DriveParams, derive_params


def full_register(p: DriveParams) -> Register:
    return make_register([4] * p.n_atoms + [p.fock_cutoff + 1], ["atom"] * p.n_atoms + ["cavity"])


def effective_register(p: DriveParams) -> Register:
    return make_register([3] * p.n_atoms + [p.fock_cutoff + 1], ["qutrit"] * p.n_atoms + ["cavity"])


def reduced_register() -> Register:
    return make_register([3, 3], ["qutrit", "qutrit"])


def _check(reg: Register | None, expected: Register) -> Register:
    if reg is None:
        return expected
    if reg.dims != expected.dims:
        raise ShapeError(f"register dims {reg.dims} do not match the model's {expected.dims}")
    return reg


def _ket_bra(d: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


def annihilation(n_levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), 1).astype(complex)


def _op(reg: Register, factors: dict[int, np.ndarray]) -> np.ndarray:
    mats = [factors.get(s, np.eye(d, dtype=complex)) for s, d in enumerate(reg.dims)]
    return reduce(np.kron, mats)


@dataclass(frozen=True, eq=False)
class RotatingFrameHamiltonian:
    """``H(t) = exp(-iKt) H0 exp(iKt)`` with diagonal ``K`` (stored as a vector)."""

    h0: np.ndarray = field(repr=False)
    frame: np.ndarray = field(repr=False)

    def at(self, t: float) -> np.ndarray:
        ph = np.exp(-1j * self.frame * t)
        return ph[:, None] * self.h0 * ph.conj()[None, :]

    def __call__(self, t: float) -> np.ndarray:
        return self.at(t)

    @property
    def generator(self) -> np.ndarray:
        return self.h0 - np.diag(self.frame)


def full_hamiltonian(t: float, p: DriveParams, reg: Register | None = None) -> np.ndarray:
    """Interaction-picture Hamiltonian of the four-level atoms and the cavity mode at time ``t``."""
    reg = _check(reg, full_register(p))
    cav = p.n_atoms
    a = annihilation(reg.dims[cav])
    h = np.zeros((reg.total_dim,) * 2, dtype=complex)
    drive = np.exp(1j * p.delta1 * t)
    for m, omega, phase in zip(p.driven_pair, p.omega, p.drive_phase):
        h += drive * omega * np.exp(-1j * phase) * _op(reg, {m: _ket_bra(4, LEVEL_R, LEVEL_A)})
    # the cavity couples every atom, driven or not
    cavity = np.exp(1j * p.delta2 * t) * p.g
    for m in range(p.n_atoms):
        h += cavity * _op(reg, {m: _ket_bra(4, LEVEL_R, LEVEL_1), cav: a})
    return h + h.conj().T


def full_frame(p: DriveParams, reg: Register | None = None) -> RotatingFrameHamiltonian:
    reg = _check(reg, full_register(p))
    frame = _frame_diagonal(reg, p.n_atoms, {LEVEL_R: -p.delta2, LEVEL_A: -p.delta})
    return RotatingFrameHamiltonian(full_hamiltonian(0.0, p, reg), frame)


def effective_hamiltonian_e(t: float, p: DriveParams, reg: Register | None = None) -> np.ndarray:
    """Excited level eliminated: Stark shifts plus photon-assisted Raman transitions at time ``t``."""
    reg = _check(reg, effective_register(p))
    d = derive_params(p, warn=False)
    cav = p.n_atoms
    a = annihilation(reg.dims[cav])
    num = a.conj().T @ a
    h = np.zeros((reg.total_dim,) * 2, dtype=complex)
    raman = np.zeros_like(h)
    osc = np.exp(1j * d.delta * t)
    for m, omega, phase, lam in zip(p.driven_pair, p.omega, p.drive_phase, (d.lambda_j, d.lambda_j1)):
        h -= omega**2 / p.delta1 * _op(reg, {m: _ket_bra(3, LEVEL_A, LEVEL_A)})
        raman -= lam * np.exp(1j * phase) * osc * _op(reg, {m: _ket_bra(3, LEVEL_A, LEVEL_1), cav: a})
    h += raman + raman.conj().T
    for m in range(p.n_atoms):
        h -= p.g**2 / p.delta2 * _op(reg, {m: _ket_bra(3, LEVEL_1, LEVEL_1), cav: num})
    return h


def effective_frame(p: DriveParams, reg: Register | None = None) -> RotatingFrameHamiltonian:
    reg = _check(reg, effective_register(p))
    frame = _frame_diagonal(reg, p.n_atoms, {LEVEL_A: -p.delta})
    return RotatingFrameHamiltonian(effective_hamiltonian_e(0.0, p, reg), frame)


def _frame_diagonal(reg: Register, n_atoms: int, level_energies: dict[int, float]) -> np.ndarray:
    labels = all_labels(reg)
    k = np.zeros(reg.total_dim)
    for level, energy in level_energies.items():
        k += energy * np.sum(labels[:, :n_atoms] == level, axis=1)
    return k


def photon_resolved_hamiltonian(p: DriveParams, reg: Register | None = None) -> np.ndarray:
    """Static Hamiltonian after eliminating the off-resonant Raman transitions.

    Photon number is conserved. ``a a^dagger`` is taken as ``a^dagger a + 1``
    so the Fock truncation does not distort the top level.
    """
    reg = _check(reg, effective_register(p))
    d = derive_params(p, warn=False)
    cav = p.n_atoms
    nc = reg.dims[cav]
    num = np.diag(np.arange(nc, dtype=float)).astype(complex)
    aad = num + np.eye(nc)
    j, k = p.driven_pair
    h = np.zeros((reg.total_dim,) * 2, dtype=complex)
    for m, omega, lam in zip(p.driven_pair, p.omega, (d.lambda_j, d.lambda_j1)):
        aa = _ket_bra(3, LEVEL_A, LEVEL_A)
        h += _op(reg, {m: aa}) * (-(omega**2) / p.delta1)
        h += lam**2 / d.delta * _op(reg, {m: aa, cav: aad})
        h -= lam**2 / d.delta * _op(reg, {m: _ket_bra(3, LEVEL_1, LEVEL_1), cav: num})
    flip = np.exp(1j * d.phase_diff) * _op(reg, {j: _ket_bra(3, LEVEL_A, LEVEL_1), k: _ket_bra(3, LEVEL_1, LEVEL_A)})
    h += d.xi * (flip + flip.conj().T)
    for m in range(p.n_atoms):
        h -= p.g**2 / p.delta2 * _op(reg, {m: _ket_bra(3, LEVEL_1, LEVEL_1), cav: num})
    return h


def reduced_hamiltonian(p: DriveParams | DerivedParams) -> np.ndarray:
    """Vacuum-sector Hamiltonian on the two driven qutrits (9x9, first driven atom most significant)."""
    d = p if isinstance(p, DerivedParams) else derive_params(p, warn=False)
    reg = reduced_register()
    aa = _ket_bra(3, LEVEL_A, LEVEL_A)
    h = -d.mu_j * _op(reg, {0: aa}) - d.mu_j1 * _op(reg, {1: aa})
    flip = np.exp(1j * d.phase_diff) * _op(reg, {0: _ket_bra(3, LEVEL_A, LEVEL_1), 1: _ket_bra(3, LEVEL_1, LEVEL_A)})
    return h + d.xi * (flip + flip.conj().T)


def number_operator(reg: Register) -> np.ndarray:
    cav = reg.n_sites - 1
    n = np.arange(reg.dims[cav], dtype=float)
    return _op(reg, {cav: np.diag(n).astype(complex)})


def second_order_coupling(p: DriveParams, n_photons: int) -> complex:
    """Two-path virtual-photon coupling |1_j a_{j+1} n> -> |a_j 1_{j+1} n>, from explicit matrix elements.

    Paths run through |1_j 1_{j+1} n+1> (energy denominator +delta) and
    |a_j a_{j+1} n-1> (denominator -delta); the second is absent for n = 0.
    The e^{+-i delta t} factors cancel within each product, so t = 0 is used.
    """
    if n_photons < 0:
        raise ValueError("n_photons must be >= 0")
    q = replace(p, n_atoms=2, driven_pair=(0, 1), fock_cutoff=n_photons + 1)
    reg = effective_register(q)
    h = effective_hamiltonian_e(0.0, q, reg)
    delta = q.delta

    def el(bra, ket):
        return h[index_of(reg, bra), index_of(reg, ket)]

    n = n_photons
    final, initial = (LEVEL_A, LEVEL_1, n), (LEVEL_1, LEVEL_A, n)
    up = (LEVEL_1, LEVEL_1, n + 1)
    total = el(final, up) * el(up, initial) / delta
    if n > 0:
        down = (LEVEL_A, LEVEL_A, n - 1)
        total += el(final, down) * el(down, initial) / (-delta)
    return complex(total)


def vacuum_projector_diag(reg: Register) -> np.ndarray:
    """Boolean mask of basis states with zero photons."""
    labels = all_labels(reg)
    return labels[:, -1] == 0
