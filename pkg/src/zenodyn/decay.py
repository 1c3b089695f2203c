"""Effective decay rates, Zeno times and QZE/AQZE classification.

The decay rate observed under repeated measurement at interval tau is the
windowed spectral overlap

    gamma(tau) = 2 pi int_0^inf S(w) F(w - w_c; tau) dw,

with (S, w_c) = (G, w0) in the rotating-wave approximation and
(G', w_a) when the counter-rotating terms are kept.  The window F selects
modes within ~1/tau of the transition; gamma therefore interpolates
between the quadratic short-time law gamma ~ tau/tau_Z^2 and the golden-
rule value 2 pi S(w_c) at long times.  Intervals where gamma exceeds a
reference rate mark the anti-Zeno regime.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfiniteZenoTime
from .numerics import QuadratureSpec, integrate_windowed
from .renormalization import RenormalizedSystem, SystemConfig
from .spectral import (ModulatedSpectrum, dephasing, g_of_omega, g_prime,
                       spectral_moment)

__all__ = [
    "RateCurve",
    "ZenoClassification",
    "wigner_weisskopf_rate",
    "effective_rate",
    "rate_curve",
    "zeno_time",
    "classify_zeno",
]

MODE_RWA = "rwa"
MODE_FULL = "full"


@dataclass(frozen=True)
class RateCurve:
    """Sampled gamma(tau) with its reference rates.

    gamma0 is the golden-rule rate 2 pi G(w0); gamma_asym is the long-time
    limit of this curve (2 pi G(w0) for RWA, 2 pi G'(w_a) otherwise).
    Reference rates may be NaN when the producing context cannot supply
    them (e.g. a curve distilled from survival data alone).
    """

    mode: str
    taus: np.ndarray
    gammas: np.ndarray
    gamma0: float
    gamma_asym: float

    def __post_init__(self):
        object.__setattr__(self, "taus", np.asarray(self.taus, dtype=float))
        object.__setattr__(self, "gammas", np.asarray(self.gammas, dtype=float))
        if self.mode not in (MODE_RWA, MODE_FULL):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.taus.ndim != 1 or self.taus.size == 0:
            raise DomainError("taus must be a nonempty 1-d sequence")
        if self.gammas.shape != self.taus.shape:
            raise DomainError("gammas must match taus in length")
        if np.any(self.taus <= 0) or np.any(np.diff(self.taus) <= 0):
            raise DomainError("taus must be positive and strictly increasing")
        if np.any(self.gammas < 0):
            raise DomainError("rates must be nonnegative")


@dataclass(frozen=True)
class ZenoClassification:
    """Maximal intervals where gamma(tau) exceeds the reference rate."""

    windows: tuple[tuple[float, float], ...]
    reference: float
    pure_qze: bool = field(default=True)

    def __post_init__(self):
        prev_hi = -math.inf
        for lo, hi in self.windows:
            if not lo < hi:
                raise DomainError("window endpoints must satisfy lo < hi")
            if lo <= prev_hi:
                raise DomainError("windows must be disjoint and increasing")
            prev_hi = hi
        object.__setattr__(self, "pure_qze", len(self.windows) == 0)


def _spectrum_and_center(cfg: SystemConfig, rsys: RenormalizedSystem | None):
    if rsys is None:
        return (lambda w: g_of_omega(w, cfg.spectrum)), cfg.omega0
    mod = ModulatedSpectrum(cfg.spectrum, rsys.omega_a)
    return (lambda w: g_prime(w, mod)), rsys.omega_a


def wigner_weisskopf_rate(cfg: SystemConfig) -> float:
    """Golden-rule reference rate 2 pi G(w0)."""
    return 2.0 * math.pi * float(g_of_omega(cfg.omega0, cfg.spectrum))


def effective_rate(
    tau: float,
    cfg: SystemConfig,
    rsys: RenormalizedSystem | None,
    quad: QuadratureSpec,
) -> float:
    """Decay rate gamma(tau) after a measurement interval tau.

    Passing rsys selects the counter-rotating form (spectrum G', centre
    w_a); rsys=None selects the rotating-wave form (G, w0).
    """
    if tau <= 0:
        raise DomainError("tau must be positive")
    spectrum, center = _spectrum_and_center(cfg, rsys)

    def integrand(w):
        return spectrum(w) * dephasing(w - center, tau)

    scale = min(cfg.spectrum.gamma_width, cfg.spectrum.omega_c)
    return 2.0 * math.pi * integrate_windowed(integrand, center, 1.0 / tau,
                                              quad, smooth_scale=scale)


def rate_curve(
    cfg: SystemConfig,
    rsys: RenormalizedSystem | None,
    tau_grid: Sequence[float],
    quad: QuadratureSpec,
) -> RateCurve:
    """Sample gamma(tau) on a grid and attach both reference rates."""
    taus = np.asarray(tau_grid, dtype=float)
    gammas = np.array([effective_rate(t, cfg, rsys, quad) for t in taus])
    gamma0 = wigner_weisskopf_rate(cfg)
    if rsys is None:
        mode, gamma_asym = MODE_RWA, gamma0
    else:
        mod = ModulatedSpectrum(cfg.spectrum, rsys.omega_a)
        mode = MODE_FULL
        gamma_asym = 2.0 * math.pi * float(g_prime(rsys.omega_a, mod))
    return RateCurve(mode=mode, taus=taus, gammas=gammas,
                     gamma0=gamma0, gamma_asym=gamma_asym)


def zeno_time(
    cfg: SystemConfig,
    rsys: RenormalizedSystem | None,
    quad: QuadratureSpec,
) -> float:
    """Timescale of the initial quadratic decay, (int spectrum)^{-1/2}."""
    if rsys is None:
        moment = spectral_moment(cfg.spectrum, quad)
    else:
        moment = spectral_moment(ModulatedSpectrum(cfg.spectrum, rsys.omega_a),
                                 quad)
    if moment <= 0.0:
        raise InfiniteZenoTime("integrated spectrum vanishes (alpha = 0?)")
    return 1.0 / math.sqrt(moment)


def _refine_crossing(rate_fn, ref, t_lo, t_hi, above_hi):
    """Bisect rate_fn(t) - ref between grid neighbours t_lo < t_hi."""
    for _ in range(48):
        if t_hi - t_lo <= 1e-3 * t_lo:
            break
        mid = 0.5 * (t_lo + t_hi)
        g_mid = rate_fn(mid) - ref
        if (g_mid > 0) == above_hi:
            t_hi = mid
        else:
            t_lo, g_lo = mid, g_mid
    return 0.5 * (t_lo + t_hi)


def classify_zeno(
    curve: RateCurve,
    reference: str = "gamma0",
    rate_fn: Callable[[float], float] | None = None,
) -> ZenoClassification:
    """Locate the anti-Zeno windows of a rate curve.

    `reference` picks the comparison rate: "gamma0" (golden rule at the
    bare frequency, the normalization used on the tau axes of the rate
    scenario) or "gamma_asym" (the curve's own long-time limit).  Windows
    are maximal runs of grid points with gamma > reference; when `rate_fn`
    is supplied the window endpoints are refined by bisection between the
    bracketing grid points, otherwise by linear interpolation.
    """
    if reference == "gamma0":
        ref = curve.gamma0
    elif reference == "gamma_asym":
        ref = curve.gamma_asym
    else:
        raise DomainError(f"unknown reference {reference!r}")
    if not math.isfinite(ref):
        raise DomainError("reference rate is not finite")

    taus, gammas = curve.taus, curve.gammas
    above = gammas > ref
    windows = []
    i = 0
    n = taus.size
    while i < n:
        if not above[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and above[j + 1]:
            j += 1
        lo = taus[i]
        if i > 0:
            if rate_fn is not None:
                lo = _refine_crossing(rate_fn, ref, taus[i - 1], taus[i], True)
            else:
                lo = _interp_crossing(taus[i - 1], taus[i],
                                      gammas[i - 1], gammas[i], ref)
        hi = taus[j]
        if j + 1 < n:
            if rate_fn is not None:
                hi = _refine_crossing(rate_fn, ref, taus[j], taus[j + 1], False)
            else:
                hi = _interp_crossing(taus[j], taus[j + 1],
                                      gammas[j], gammas[j + 1], ref)
        if lo < hi:
            windows.append((float(lo), float(hi)))
        i = j + 1
    return ZenoClassification(windows=tuple(windows), reference=float(ref))


def _interp_crossing(t0, t1, g0, g1, ref):
    if g1 == g0:
        return 0.5 * (t0 + t1)
    frac = (ref - g0) / (g1 - g0)
    return t0 + frac * (t1 - t0)
