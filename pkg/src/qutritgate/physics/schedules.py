"""Square-pulse schedules realizing the conditional swap and the qutrit-qubit phase gate."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from ..errors import AsymmetricDriveError, DegenerateScheduleError, ShapeError, UnreachablePhaseError
from ..register import LEVEL_0, LEVEL_1, LEVEL_A, PureState, apply_local_operator
from .hamiltonians import effective_frame, effective_register, full_frame, full_register, reduced_hamiltonian
from .params import DerivedParams, DriveParams, derive_params
from .propagation import IntegratorSettings, evolve, expm_hermitian

# column order of the closed-form map: |a_j 1_{j+1}>, |1_j a_{j+1}>, |a_j 0_{j+1}>
CLOSED_FORM_BASIS = ((LEVEL_A, LEVEL_1), (LEVEL_1, LEVEL_A), (LEVEL_A, LEVEL_0))

PHASE_TOL = 1e-10


class HamiltonianLevel(enum.Enum):
    FULL = "full"
    EFFECTIVE = "effective"
    REDUCED = "reduced"


@dataclass(frozen=True)
class PulseSchedule:
    """One square pulse of ``duration`` followed by instantaneous |a>-level phase corrections.

    ``post_corrections`` holds ``(site, level, theta)`` triples; ``params`` is
    the drive (with phases fixed by the schedule) that the pulse uses.
    """

    gate: str
    hamiltonian_level: HamiltonianLevel
    duration: float
    post_corrections: tuple[tuple[int, int, float], ...]
    params: DriveParams
    conditional_phase: float | None = None

    def __post_init__(self):
        if not self.duration > 0:
            raise DegenerateScheduleError(f"schedule duration must be positive, got {self.duration}")

    def at_level(self, level: HamiltonianLevel) -> "PulseSchedule":
        return replace(self, hamiltonian_level=HamiltonianLevel(level))


def closed_form_evolution(d: DerivedParams, t: float) -> np.ndarray:
    """3x3 map on (|a1>, |1a>, |a0>); column ``c`` is the image of basis state ``c``."""
    c = math.cos(d.eta * t)
    s_over = t if d.eta == 0 else math.sin(d.eta * t) / d.eta
    pre = np.exp(1j * d.mu * t)
    m = np.zeros((3, 3), dtype=complex)
    m[0, 0] = pre * (c - 0.5j * d.epsilon * s_over)
    m[1, 0] = pre * (-1j * d.xi * np.exp(-1j * d.phase_diff) * s_over)
    m[1, 1] = pre * (c + 0.5j * d.epsilon * s_over)
    m[0, 1] = pre * (-1j * d.xi * np.exp(1j * d.phase_diff) * s_over)
    m[2, 2] = np.exp(1j * d.mu_j * t)
    return m


def swap_pulse_schedule(p: DriveParams, reverse: bool = False, level: HamiltonianLevel = HamiltonianLevel.REDUCED) -> PulseSchedule:
    """Schedule for U_{j,j+1} (or U_{j+1,j} with ``reverse``) on the driven pair.

    Needs equal Rabi frequencies so both |a> levels shift alike. With a
    negative two-photon detuning the coupling changes sign, which is absorbed by
    shifting the drive phase difference by pi.
    """
    om_j, om_j1 = p.omega
    if not math.isclose(om_j, om_j1, rel_tol=1e-12, abs_tol=0.0):
        raise AsymmetricDriveError(f"conditional swap needs equal Rabi frequencies, got {om_j} and {om_j1}")
    phase_diff = math.pi / 2 if reverse else -math.pi / 2
    d0 = derive_params(p, warn=False)
    if d0.xi == 0:
        raise DegenerateScheduleError("xi = 0: no effective exchange coupling to drive the swap")
    if d0.xi < 0:
        phase_diff += math.pi
    phi_j = p.drive_phase[0]
    q = p.with_phases(phi_j, phi_j - phase_diff)
    d = derive_params(q)
    t = math.pi / (2 * abs(d.xi))
    theta = -d.mu * t
    j, k = q.driven_pair
    return PulseSchedule(
        gate="swap_reverse" if reverse else "swap",
        hamiltonian_level=HamiltonianLevel(level),
        duration=t,
        post_corrections=((j, LEVEL_A, theta), (k, LEVEL_A, theta)),
        params=q,
    )


def phase_pulse_schedule(p: DriveParams, level: HamiltonianLevel = HamiltonianLevel.REDUCED) -> tuple[PulseSchedule, float]:
    """Schedule for the pair's controlled phase: a full eta t = pi cycle.

    Returns the schedule and the conditional phase pi (1 + epsilon / (2 eta))
    acquired by |a_j 1_{j+1}> once |a_j> has been corrected.
    """
    d = derive_params(p)
    if d.eta == 0:
        raise DegenerateScheduleError("eta = 0: the drive produces no coupling and no Stark asymmetry")
    t = math.pi / d.eta
    phase = conditional_phase(d)
    j, _ = p.driven_pair
    sched = PulseSchedule(
        gate="phase",
        hamiltonian_level=HamiltonianLevel(level),
        duration=t,
        post_corrections=((j, LEVEL_A, -math.pi * d.mu_j / d.eta),),
        params=p,
        conditional_phase=phase,
    )
    return sched, phase


def conditional_phase(d: DerivedParams) -> float:
    return math.pi * (1.0 + d.epsilon / (2.0 * d.eta))


def _phase_correction(state: PureState, site: int, level: int, theta: float) -> PureState:
    diag = np.ones(state.register.dims[site], dtype=complex)
    diag[level] = np.exp(1j * theta)
    return apply_local_operator(state, np.diag(diag), [site])


def apply_corrections(state: PureState, schedule: PulseSchedule) -> PureState:
    for site, level, theta in schedule.post_corrections:
        state = _phase_correction(state, site, level, theta)
    return state


def schedule_hamiltonian(schedule: PulseSchedule):
    """Hamiltonian source and register for the schedule's level of description."""
    p = schedule.params
    if schedule.hamiltonian_level is HamiltonianLevel.FULL:
        return full_frame(p), full_register(p)
    if schedule.hamiltonian_level is HamiltonianLevel.EFFECTIVE:
        return effective_frame(p), effective_register(p)
    return reduced_hamiltonian(p), None


def run_schedule(state: PureState, schedule: PulseSchedule, control: IntegratorSettings | None = None, corrections: bool = True) -> PureState:
    """Evolve ``state`` through the pulse and then apply the phase corrections.

    At the reduced level the 9x9 pair propagator is applied to the driven
    sites of any qutrit register; the other levels need the model's own
    register (atoms followed by the cavity).
    """
    h, reg = schedule_hamiltonian(schedule)
    if reg is None:
        j, k = schedule.params.driven_pair
        if max(j, k) >= state.register.n_sites or state.register.dims[j] != 3 or state.register.dims[k] != 3:
            raise ShapeError("reduced-level schedule needs qutrits on the driven pair")
        out = apply_local_operator(state, expm_hermitian(h, schedule.duration), [j, k])
    else:
        if state.register.dims != reg.dims:
            raise ShapeError(f"state register {state.register.dims} does not match the model's {reg.dims}")
        out = evolve(state, h, schedule.duration, control)
    return apply_corrections(out, schedule) if corrections else out


def solve_rabi_for_phase(target_phi: float, fixed: DriveParams, span: tuple[float, float] = (1e-4, 1e4), n_scan: int = 801) -> float:
    """Rabi frequency of the second driven atom giving conditional phase ``target_phi``.

    Scans ``Omega_{j+1} / Omega_j`` logarithmically over ``span`` and refines the
    first sign change with Brent's method.
    """
    if not 0.0 < target_phi < 2 * math.pi:
        raise UnreachablePhaseError(f"conditional phase pi (1 + eps / 2 eta) lies strictly inside (0, 2 pi); got {target_phi}")
    om_j = fixed.omega[0]

    def f(om):
        return conditional_phase(derive_params(fixed.with_omega(om_j, om), warn=False)) - target_phi

    grid = om_j * np.logspace(math.log10(span[0]), math.log10(span[1]), n_scan)
    values = np.array([f(x) for x in grid])
    for i, v in enumerate(values):
        if v == 0.0:
            return float(grid[i])
        if i + 1 < len(values) and np.sign(v) != np.sign(values[i + 1]):
            root = brentq(f, grid[i], grid[i + 1], xtol=1e-15 * grid[i], rtol=4 * np.finfo(float).eps, maxiter=200)
            if abs(f(root)) > PHASE_TOL:
                raise UnreachablePhaseError(f"root refinement stalled at residual {f(root):.3g}")
            return float(root)
    raise UnreachablePhaseError(f"no Omega in [{grid[0]:g}, {grid[-1]:g}] reaches conditional phase {target_phi}")
