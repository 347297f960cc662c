"""Drive parameters and the chain of derived effective couplings.

Units: hbar = 1, rates in units of the atom-cavity coupling g (g = 1 by default).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from ..errors import ArgumentError, SingularDetuningError, RegimeWarning

REGIME_RATIO = 10.0


@dataclass(frozen=True)
class DriveParams:
    """Physical inputs for driving the atom pair ``driven_pair = (j, j+1)``.

    ``omega`` and ``drive_phase`` hold (Omega_j, Omega_{j+1}) and
    (phi_j, phi_{j+1}) for the two driven atoms.
    """

    omega: tuple[float, float] = (1.0, 1.0)
    drive_phase: tuple[float, float] = (0.0, 0.0)
    g: float = 1.0
    delta1: float = 100.0
    delta2: float = 110.0
    n_atoms: int = 2
    driven_pair: tuple[int, int] = (0, 1)
    fock_cutoff: int = 3

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(float(x) for x in self.omega))
        object.__setattr__(self, "drive_phase", tuple(float(x) for x in self.drive_phase))
        object.__setattr__(self, "driven_pair", tuple(int(x) for x in self.driven_pair))
        if len(self.omega) != 2 or len(self.drive_phase) != 2:
            raise ArgumentError("omega and drive_phase need one entry per driven atom")
        if self.g < 0:
            raise ArgumentError(f"g must be non-negative, got {self.g}")
        if self.delta1 == 0 or self.delta2 == 0:
            raise SingularDetuningError("detunings delta1 and delta2 must be nonzero")
        j, k = self.driven_pair
        if k != j + 1 or j < 0 or k >= self.n_atoms:
            raise ArgumentError(f"driven pair must be adjacent atoms (j, j+1) inside 0..{self.n_atoms - 1}")
        if self.fock_cutoff < 1:
            raise ArgumentError("fock_cutoff must be >= 1")

    @property
    def delta(self) -> float:
        return self.delta2 - self.delta1

    def scaled(self, s: float) -> "DriveParams":
        """Both detunings multiplied by ``s``; Rabi frequencies and g unchanged."""
        return replace(self, delta1=self.delta1 * s, delta2=self.delta2 * s)

    def with_omega(self, omega_j: float, omega_j1: float) -> "DriveParams":
        return replace(self, omega=(omega_j, omega_j1))

    def with_phases(self, phi_j: float, phi_j1: float) -> "DriveParams":
        return replace(self, drive_phase=(phi_j, phi_j1))


@dataclass(frozen=True)
class DerivedParams:
    lambda_j: float
    lambda_j1: float
    delta: float
    xi: float
    phase_diff: float
    mu_j: float
    mu_j1: float
    mu: float
    epsilon: float
    eta: float


def raman_coupling(omega: float, g: float, delta1: float, delta2: float) -> float:
    return 0.5 * omega * g * (1.0 / delta1 + 1.0 / delta2)


def derive_params(p: DriveParams, warn: bool = True) -> DerivedParams:
    delta = p.delta
    if delta == 0:
        raise SingularDetuningError("two-photon detuning delta2 - delta1 vanishes")
    (om_j, om_j1), (ph_j, ph_j1) = p.omega, p.drive_phase
    lam_j = raman_coupling(om_j, p.g, p.delta1, p.delta2)
    lam_j1 = raman_coupling(om_j1, p.g, p.delta1, p.delta2)
    xi = lam_j * lam_j1 / delta
    mu_j = om_j**2 / p.delta1 - lam_j**2 / delta
    mu_j1 = om_j1**2 / p.delta1 - lam_j1**2 / delta
    eps = mu_j1 - mu_j
    d = DerivedParams(
        lambda_j=lam_j,
        lambda_j1=lam_j1,
        delta=delta,
        xi=xi,
        phase_diff=ph_j - ph_j1,
        mu_j=mu_j,
        mu_j1=mu_j1,
        mu=0.5 * (mu_j + mu_j1),
        epsilon=eps,
        eta=math.sqrt(xi**2 + 0.25 * eps**2),
    )
    if warn:
        for msg in regime_warnings(p, d):
            warnings.warn(msg, RegimeWarning, stacklevel=2)
    return d


def regime_warnings(p: DriveParams, d: DerivedParams | None = None) -> list[str]:
    """Messages for every dispersive-regime inequality holding by less than a factor 10."""
    if d is None:
        d = derive_params(p, warn=False)
    out = []
    big = min(abs(p.delta1), abs(p.delta2))
    small = max(max(abs(o) for o in p.omega), p.g)
    if big < REGIME_RATIO * small:
        out.append(f"excited-level elimination: min|delta1|,|delta2| = {big:g} is not >> max(Omega, g) = {small:g}")
    lam = max(abs(d.lambda_j), abs(d.lambda_j1))
    stark = max(o**2 for o in p.omega) / abs(p.delta1)
    cav = p.g**2 / abs(p.delta2)
    small2 = max(lam, stark, cav)
    if abs(d.delta) < REGIME_RATIO * small2:
        out.append(f"photon elimination: |delta| = {abs(d.delta):g} is not >> max(lambda, Omega^2/delta1, g^2/delta2) = {small2:g}")
    return out
