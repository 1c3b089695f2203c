"""Closed-form spectral functions of the bosonic bath.

The bath is a single smooth peak of width Gamma centred at Omega,

    G(w) = (1/2) alpha w Omega^4 / ((w^2 - Omega^2)^2 + Gamma^2 w^2),

and the counter-rotating coupling terms modulate it by

    f(w) = (2 w_a)^2 / (w + w_a)^2,       G'(w) = G(w) f(w),

where w_a is the renormalized transition frequency.  Frequencies are
measured in units of Omega (Omega = 1 by default) and times in 1/Omega.

Every discrete bath sum sum_k g_k^2 h(w_k) is mapped to the continuum as
4 * int_0^inf G(w) h(w) dw; the renormalization and survival modules rely
on that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import QuadratureSpec, integrate_semi_infinite

__all__ = [
    "BathSpectrum",
    "ModulatedSpectrum",
    "g_of_omega",
    "modulation_factor",
    "g_prime",
    "dephasing",
    "spectral_moment",
]

# |delta*tau| below which the sinc^2 window switches to its power series
_SERIES_CUT = 1e-4


@dataclass(frozen=True)
class BathSpectrum:
    """Bath parameters: coupling alpha, width gamma_width, centre omega_c."""

    alpha: float
    gamma_width: float
    omega_c: float = 1.0

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError("alpha must be nonnegative")
        if self.omega_c <= 0:
            raise DomainError("omega_c must be positive")
        if self.gamma_width <= 0:
            raise DomainError("gamma_width must be positive")
        if self.gamma_width >= 2.0 * self.omega_c:
            # wider than 2*Omega the denominator acquires real roots and the
            # spectrum stops being a single smooth peak
            raise DomainError("gamma_width must be below 2*omega_c")


@dataclass(frozen=True)
class ModulatedSpectrum:
    """A bath spectrum together with the renormalized frequency omega_a."""

    base: BathSpectrum
    omega_a: float

    def __post_init__(self):
        if self.omega_a <= 0:
            raise DomainError("omega_a must be positive")


def g_of_omega(omega, s: BathSpectrum):
    """Bath spectral density G(w); vanishes at w=0 and decays like 1/w^3."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("frequency must be nonnegative")
    oc2 = s.omega_c * s.omega_c
    return (0.5 * s.alpha * w * oc2 * oc2
            / ((w * w - oc2) ** 2 + (s.gamma_width * w) ** 2))


def modulation_factor(omega, omega_a: float):
    """Counter-rotating modulation f(w) = (2 w_a / (w + w_a))^2.

    Strictly decreasing, equal to 4 at w=0, to 1 at w=w_a, and above 1
    exactly for w < w_a.
    """
    if omega_a <= 0:
        raise DomainError("omega_a must be positive")
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("frequency must be nonnegative")
    r = 2.0 * omega_a / (w + omega_a)
    return r * r


def g_prime(omega, m: ModulatedSpectrum):
    """Modulated spectrum G'(w) = G(w) f(w)."""
    return g_of_omega(omega, m.base) * modulation_factor(omega, m.omega_a)


def dephasing(delta, tau: float):
    """Spectral window F(delta; tau) = 2 sin^2(delta tau/2) / (pi tau delta^2).

    Peak value tau/(2 pi) at delta = 0, unit integral over the whole real
    line, and a delta-function limit as tau grows.  For |delta*tau| below
    1e-4 the quadratic series of sin^2 is used to avoid 0/0.
    """
    if tau <= 0:
        raise DomainError("tau must be positive")
    d = np.asarray(delta, dtype=float)
    u = d * tau
    small = np.abs(u) < _SERIES_CUT
    d_safe = np.where(small, 1.0, d)
    direct = 2.0 * np.sin(0.5 * d_safe * tau) ** 2 / (np.pi * tau * d_safe * d_safe)
    series = tau / (2.0 * np.pi) * (1.0 - u * u / 12.0)
    return np.where(small, series, direct)


def spectral_moment(m, quad: QuadratureSpec) -> float:
    """Total integrated spectrum int_0^inf G dw (or G' dw).

    Accepts either a :class:`BathSpectrum` or a :class:`ModulatedSpectrum`;
    the result is the inverse square of the corresponding Zeno time.
    """
    if isinstance(m, ModulatedSpectrum):
        base = m.base
        integrand = lambda w: float(g_prime(w, m))
    elif isinstance(m, BathSpectrum):
        base = m
        integrand = lambda w: float(g_of_omega(w, m))
    else:
        raise DomainError(f"unsupported spectrum type {type(m).__name__}")
    return integrate_semi_infinite(integrand, quad, scale=base.omega_c)
