"""Scalar outcomes of the polaron-style unitary transformation.

The counter-rotating coupling is absorbed into a dressed ground state,
leaving a reduced transition frequency w_a = eta * w0.  The suppression
factor solves the self-consistency

    eta = exp[ -2 int_0^inf G(w) / (w + eta*w0)^2 dw ],

which is the continuum form of eta = exp[-sum_k g_k^2 xi_k^2 / (2 w_k^2)]
with the mode weight xi(w) = w / (w + eta*w0).  Alongside eta the
transformation yields the level shift (eta-1)*w0, the vacuum-fluctuation
self-energy, and the dressed ground energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import (FixedPointSpec, QuadratureSpec, integrate_semi_infinite,
                       solve_fixed_point)
from .spectral import BathSpectrum, g_of_omega

__all__ = [
    "SystemConfig",
    "RenormalizedSystem",
    "xi",
    "eta_map",
    "solve_renormalization",
]


@dataclass(frozen=True)
class SystemConfig:
    """Bare transition frequency plus the bath spectrum."""

    omega0: float
    spectrum: BathSpectrum

    def __post_init__(self):
        # w0 -> 0 makes the eta exponent integral diverge logarithmically
        if self.omega0 <= 0:
            raise DomainError("omega0 must be positive")


@dataclass(frozen=True)
class RenormalizedSystem:
    """Immutable result of the self-consistent renormalization."""

    eta: float
    omega_a: float
    energy_shift: float
    self_energy: float
    ground_energy: float

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise DomainError("eta must lie in (0, 1]")
        if self.omega_a <= 0:
            raise DomainError("omega_a must be positive")
        if self.self_energy < 0:
            raise DomainError("self_energy must be nonnegative")
        if abs(self.ground_energy + 0.5 * self.omega_a + self.self_energy) \
                > 1e-12 * (1.0 + abs(self.ground_energy)):
            raise DomainError(
                "ground_energy must equal -omega_a/2 - self_energy")


def xi(omega, omega_a: float):
    """Mode weight xi(w) = w / (w + w_a), in [0, 1) and increasing."""
    if omega_a <= 0:
        raise DomainError("omega_a must be positive")
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("frequency must be nonnegative")
    return w / (w + omega_a)


def eta_map(eta_trial: float, cfg: SystemConfig, quad: QuadratureSpec) -> float:
    """One application of the self-consistency map for eta."""
    if not 0.0 < eta_trial <= 1.0:
        raise DomainError("eta_trial must lie in (0, 1]")
    wa = eta_trial * cfg.omega0
    s = cfg.spectrum

    def integrand(w: float) -> float:
        return float(g_of_omega(w, s)) / (w + wa) ** 2

    exponent = 2.0 * integrate_semi_infinite(integrand, quad, scale=s.omega_c)
    return math.exp(-exponent)


def solve_renormalization(
    cfg: SystemConfig,
    quad: QuadratureSpec,
    fp: FixedPointSpec,
    method: str = "auto",
) -> RenormalizedSystem:
    """Solve the eta self-consistency and assemble the energy bookkeeping.

    The fixed point is started from the undressed value eta = 1, where the
    map is a contraction at weak coupling.  The self-energy integrand
    G(w)/w * xi(w)(2 - xi(w)) is evaluated at the converged omega_a in the
    algebraically equivalent form G(w) (w + 2 w_a)/(w + w_a)^2, which stays
    finite at w -> 0.
    """
    eta = solve_fixed_point(lambda e: eta_map(e, cfg, quad), 1.0, fp,
                            method=method)
    omega_a = eta * cfg.omega0
    s = cfg.spectrum

    def se_integrand(w: float) -> float:
        return float(g_of_omega(w, s)) * (w + 2.0 * omega_a) / (w + omega_a) ** 2

    self_energy = integrate_semi_infinite(se_integrand, quad, scale=s.omega_c)
    return RenormalizedSystem(
        eta=eta,
        omega_a=omega_a,
        energy_shift=(eta - 1.0) * cfg.omega0,
        self_energy=self_energy,
        ground_energy=-0.5 * omega_a - self_energy,
    )
