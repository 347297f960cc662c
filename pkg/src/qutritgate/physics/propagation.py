"""Schrodinger-equation propagation, i dpsi/dt = H(t) psi with hbar = 1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..errors import IntegrationError, ShapeError
from ..register import PureState
from .hamiltonians import RotatingFrameHamiltonian
from .params import DriveParams

HERMITIAN_TOL = 1e-12
STEPS_PER_PERIOD = 50

HamiltonianSource = Union[np.ndarray, RotatingFrameHamiltonian, Callable[[float], np.ndarray]]


@dataclass(frozen=True)
class IntegratorSettings:
    """Step controls for explicitly time-dependent H.

    The step starts at ``max_step`` and is halved until two successive
    resolutions agree to ``tol`` in the 2-norm of the final state.
    """

    max_step: float | None = None
    tol: float = 1e-8
    max_refinements: int = 10


def default_max_step(p: DriveParams) -> float:
    periods = [2 * math.pi / abs(w) for w in (p.delta1, p.delta2, p.delta)]
    return min(periods) / STEPS_PER_PERIOD


def expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian ``h`` via eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def _check_hermitian(h: np.ndarray):
    err = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if err > HERMITIAN_TOL * max(1.0, np.max(np.abs(h))):
        raise ShapeError(f"Hamiltonian is not Hermitian (max deviation {err:.3g})")


def _apply_static(h: np.ndarray, vec: np.ndarray, t: float) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    phase = np.exp(-1j * w * t)
    coeff = v.conj().T @ vec
    coeff = phase[:, None] * coeff if vec.ndim == 2 else phase * coeff
    return v @ coeff


def _apply_frame(hf: RotatingFrameHamiltonian, vec: np.ndarray, t: float) -> np.ndarray:
    out = _apply_static(hf.generator, vec, t)
    ph = np.exp(-1j * hf.frame * t)
    return ph[:, None] * out if out.ndim == 2 else ph * out


_GAUSS = math.sqrt(3.0) / 6.0


def _piecewise(h_of_t, vec: np.ndarray, t: float, n_steps: int) -> np.ndarray:
    """Constant generator per step: fourth-order Magnus from two Gauss-Legendre samples."""
    dt = t / n_steps
    for k in range(n_steps):
        t0 = k * dt
        h1 = h_of_t(t0 + (0.5 - _GAUSS) * dt)
        h2 = h_of_t(t0 + (0.5 + _GAUSS) * dt)
        # exp(-i dt Heff) with Heff = (h1 + h2)/2 - i (sqrt3/12) dt [h2, h1]
        heff = 0.5 * (h1 + h2) - 1j * (math.sqrt(3.0) / 12.0) * dt * (h2 @ h1 - h1 @ h2)
        vec = expm_hermitian(heff, dt) @ vec
    return vec


def _evolve_vector(vec: np.ndarray, hamiltonian: HamiltonianSource, duration: float, control: IntegratorSettings | None):
    if duration < 0:
        raise ValueError("duration must be >= 0")
    if duration == 0:
        return vec.copy()
    if isinstance(hamiltonian, RotatingFrameHamiltonian):
        return _apply_frame(hamiltonian, vec, duration)
    if callable(hamiltonian):
        control = control or IntegratorSettings()
        step = control.max_step or duration / 100
        n = max(1, math.ceil(duration / step))
        coarse = _piecewise(hamiltonian, vec, duration, n)
        for _ in range(control.max_refinements):
            n *= 2
            fine = _piecewise(hamiltonian, vec, duration, n)
            if np.linalg.norm(fine - coarse) < control.tol:
                return fine
            coarse = fine
        raise IntegrationError(f"no convergence to {control.tol:g} after {control.max_refinements} step halvings")
    h = np.asarray(hamiltonian, dtype=complex)
    _check_hermitian(h)
    return _apply_static(h, vec, duration)


def evolve(state: PureState, hamiltonian: HamiltonianSource, duration: float, control: IntegratorSettings | None = None) -> PureState:
    """Propagate ``state`` for ``duration``.

    ``hamiltonian`` may be a constant Hermitian matrix (exact eigendecomposition
    propagator), a :class:`RotatingFrameHamiltonian` (exact, any duration), or a
    callable ``t -> H(t)`` (piecewise-constant fourth-order Magnus steps,
    halved until two resolutions agree).
    """
    n = state.register.total_dim
    if isinstance(hamiltonian, np.ndarray) and hamiltonian.shape != (n, n):
        raise ShapeError(f"Hamiltonian shape {hamiltonian.shape} does not match state dim {n}")
    out = _evolve_vector(state.amplitudes.copy(), hamiltonian, duration, control)
    return PureState(out, state.register)


def propagator(hamiltonian: HamiltonianSource, duration: float, dim: int, control: IntegratorSettings | None = None) -> np.ndarray:
    """Dense propagator, obtained by evolving every basis column."""
    return _evolve_vector(np.eye(dim, dtype=complex), hamiltonian, duration, control)
