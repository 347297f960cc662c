"""Fidelity metrics, detuning sweeps and gate-cost bookkeeping."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ArgumentError, UnsupportedSizeError
from .physics.hamiltonians import effective_register, full_register, reduced_register, vacuum_projector_diag
from .physics.params import DriveParams
from .physics.schedules import HamiltonianLevel, phase_pulse_schedule, run_schedule, swap_pulse_schedule
from .register import LEVEL_0, LEVEL_1, LEVEL_A, PureState, Register, inner_product, state_from_labels


def state_fidelity(a: PureState, b: PureState) -> float:
    return float(min(1.0, abs(inner_product(a, b)) ** 2))


class Scheme(enum.Enum):
    """Constructions compared by the cost model.

    EXPOSE: auxiliary level walks an exposure down the chain (2n-4 swaps, one
    qutrit-qubit phase). HIDE: auxiliary levels hide states from a chain of
    two-qubit pi-phase gates on an n-level target. QUTRIT_SWAP: three-qubit
    only, one phase gate between two qubit-qutrit swaps.
    """

    EXPOSE = "expose"
    HIDE = "hide"
    QUTRIT_SWAP = "qutrit_swap"


@dataclass(frozen=True)
class CostReport:
    """Gate counts and two-atom coupling time.

    ``coupling_time_units`` is the exact multiple of pi/xi;
    ``total_coupling_time`` the same in time units. Both are ``None`` where
    only relative durations are known.
    """

    scheme: Scheme
    n: int
    two_site_gate_count: int
    single_site_gate_count: int
    coupling_time_units: Fraction | None
    total_coupling_time: float | None
    notes: str = ""


# durations in units of pi/xi: swap pulse xi t = pi/2, two-qubit pi-phase gate twice that
SWAP_UNITS = Fraction(1, 2)
PHASE_UNITS = Fraction(1)


def cost_report(scheme: Scheme, n: int, xi: float = 1.0) -> CostReport:
    scheme = Scheme(scheme)
    if n < 3:
        raise UnsupportedSizeError("cost model needs n >= 3")
    if not xi > 0:
        raise ArgumentError("xi must be positive")
    unit = math.pi / xi
    if scheme is Scheme.EXPOSE:
        units = (2 * n - 4) * SWAP_UNITS + PHASE_UNITS
        return CostReport(scheme, n, 2 * n - 3, 2, units, float(units) * unit)
    if scheme is Scheme.HIDE:
        units = (2 * n - 3) * PHASE_UNITS
        return CostReport(scheme, n, 2 * n - 3, (2 * n - 4) + 2 * (n - 2), units, float(units) * unit)
    if n != 3:
        raise UnsupportedSizeError("the qubit-qutrit swap construction does not extend beyond n = 3")
    return CostReport(
        scheme, n, 3, 0, None, None, notes="one phase gate and two swaps; second swap lasts 3x the first"
    )


def stress_state(reg: Register, pair: tuple[int, int], phase_site_levels: dict[int, int] | None = None) -> PureState:
    """(|11> + |a1> + |a0>)/sqrt(3) on ``pair``; other atoms in |0> (or as given); cavity empty."""
    has_cavity = reg.kind(reg.n_sites - 1) == "cavity"
    n_atoms = reg.n_sites - 1 if has_cavity else reg.n_sites
    background = [LEVEL_0] * n_atoms
    for site, level in (phase_site_levels or {}).items():
        background[site] = level
    terms = {}
    for x, y in ((LEVEL_1, LEVEL_1), (LEVEL_A, LEVEL_1), (LEVEL_A, LEVEL_0)):
        levels = list(background)
        levels[pair[0]], levels[pair[1]] = x, y
        terms[tuple(levels) + ((0,) if has_cavity else ())] = 1.0
    return state_from_labels(reg, terms)


def ideal_output(reg: Register, pair: tuple[int, int], kind: str, cond_phase: float = math.pi, spectators: dict[int, int] | None = None) -> PureState:
    """Ideal image of :func:`stress_state` under the forward swap or the controlled phase."""
    has_cavity = reg.kind(reg.n_sites - 1) == "cavity"
    n_atoms = reg.n_sites - 1 if has_cavity else reg.n_sites
    background = [LEVEL_0] * n_atoms
    for site, level in (spectators or {}).items():
        background[site] = level
    if kind == "swap":
        targets = [((LEVEL_1, LEVEL_1), 1.0), ((LEVEL_1, LEVEL_A), 1.0), ((LEVEL_A, LEVEL_0), 1.0)]
    elif kind == "phase":
        targets = [((LEVEL_1, LEVEL_1), 1.0), ((LEVEL_A, LEVEL_1), np.exp(1j * cond_phase)), ((LEVEL_A, LEVEL_0), 1.0)]
    else:
        raise ArgumentError(f"unknown gate kind {kind!r}")
    terms = {}
    for (x, y), amp in targets:
        levels = list(background)
        levels[pair[0]], levels[pair[1]] = x, y
        terms[tuple(levels) + ((0,) if has_cavity else ())] = amp
    return state_from_labels(reg, terms)


def _register_for(p: DriveParams, level: HamiltonianLevel) -> Register:
    if level is HamiltonianLevel.FULL:
        return full_register(p)
    if level is HamiltonianLevel.EFFECTIVE:
        return effective_register(p)
    return reduced_register()


@dataclass(frozen=True)
class GateRun:
    kind: str
    level: HamiltonianLevel
    duration: float
    infidelity: float
    norm_error: float
    vacuum_leakage: float
    conditional_phase: float | None
    initial: PureState
    final: PureState
    ideal: PureState


def simulate_gate(p: DriveParams, kind: str = "swap", level: HamiltonianLevel = HamiltonianLevel.FULL, spectators: dict[int, int] | None = None) -> GateRun:
    """Run one elementary gate from the stress input and score it against the ideal action."""
    level = HamiltonianLevel(level)
    if kind == "swap":
        sched = swap_pulse_schedule(p, level=level)
        cond = None
    elif kind == "phase":
        sched, cond = phase_pulse_schedule(p, level=level)
    else:
        raise ArgumentError(f"unknown gate kind {kind!r}")
    q = sched.params
    if level is HamiltonianLevel.REDUCED:
        reg, pair, spect = reduced_register(), (0, 1), None
        sched = replace(sched, params=replace(q, driven_pair=(0, 1), n_atoms=2))
        sched = replace(sched, post_corrections=tuple((s - q.driven_pair[0], lv, th) for s, lv, th in sched.post_corrections))
    else:
        reg, pair, spect = _register_for(q, level), q.driven_pair, spectators
    psi0 = stress_state(reg, pair, spect)
    final = run_schedule(psi0, sched)
    ideal = ideal_output(reg, pair, kind, cond if cond is not None else math.pi, spect)
    if reg.kind(reg.n_sites - 1) == "cavity":
        vac = vacuum_projector_diag(reg)
        leak = float(np.sum(np.abs(final.amplitudes[~vac]) ** 2))
    else:
        leak = 0.0
    return GateRun(
        kind=kind,
        level=level,
        duration=sched.duration,
        infidelity=1.0 - state_fidelity(ideal, final),
        norm_error=abs(final.norm - 1.0),
        vacuum_leakage=leak,
        conditional_phase=cond,
        initial=psi0,
        final=final,
        ideal=ideal,
    )


@dataclass(frozen=True)
class SweepResult:
    scale: tuple[float, ...]
    infidelity: tuple[float, ...]
    fitted_order: float
    duration: tuple[float, ...] = ()
    norm_error: tuple[float, ...] = ()
    vacuum_leakage: tuple[float, ...] = ()

    def is_strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.infidelity, self.infidelity[1:]))


def _sweep_point(args) -> GateRun:
    base, s, kind = args
    run = simulate_gate(base.scaled(s), kind, HamiltonianLevel.FULL)
    # drop the state vectors: they are large to ship back from workers
    return (run.duration, run.infidelity, run.norm_error, run.vacuum_leakage)


def fitted_order(scales: Sequence[float], infidelity: Sequence[float]) -> float:
    """Minus the least-squares log-log slope of infidelity against scale."""
    if len(scales) < 2:
        return float("nan")
    x = np.log(np.asarray(scales, dtype=float))
    y = np.log(np.maximum(np.asarray(infidelity, dtype=float), 1e-300))
    return float(-np.polyfit(x, y, 1)[0])


def detuning_scaling_sweep(base: DriveParams, scales: Sequence[float], schedule_kind: str = "swap", jobs: int = 1) -> SweepResult:
    """Full-model infidelity as both detunings are multiplied by each scale."""
    scales = [float(s) for s in scales]
    if not scales:
        raise ArgumentError("scale list is empty")
    if any(s < 1 for s in scales) or any(b <= a for a, b in zip(scales, scales[1:])):
        raise ArgumentError("scales must be increasing and >= 1")
    tasks = [(base, s, schedule_kind) for s in scales]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]
    dur, inf, nerr, leak = (tuple(col) for col in zip(*rows))
    return SweepResult(tuple(scales), inf, fitted_order(scales, inf), dur, nerr, leak)


def fock_convergence(p: DriveParams, kind: str = "swap", extra: int = 2) -> tuple[float, float]:
    """Full-model fidelity at ``fock_cutoff`` and at ``fock_cutoff + extra``."""
    f0 = 1.0 - simulate_gate(p, kind, HamiltonianLevel.FULL).infidelity
    f1 = 1.0 - simulate_gate(replace(p, fock_cutoff=p.fock_cutoff + extra), kind, HamiltonianLevel.FULL).infidelity
    return f0, f1
