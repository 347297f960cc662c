"""Cavity-QED realization of the elementary qutrit gates."""

from .hamiltonians import (
    RotatingFrameHamiltonian,
    effective_frame,
    effective_hamiltonian_e,
    effective_register,
    full_frame,
    full_hamiltonian,
    full_register,
    number_operator,
    photon_resolved_hamiltonian,
    reduced_hamiltonian,
    reduced_register,
    second_order_coupling,
)
from .params import DerivedParams, DriveParams, derive_params, regime_warnings
from .propagation import IntegratorSettings, default_max_step, evolve, expm_hermitian, propagator
from .schedules import (
    CLOSED_FORM_BASIS,
    HamiltonianLevel,
    PulseSchedule,
    closed_form_evolution,
    conditional_phase,
    phase_pulse_schedule,
    run_schedule,
    solve_rabi_for_phase,
    swap_pulse_schedule,
)
