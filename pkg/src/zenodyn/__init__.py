"""Short-time decay of a two-level system in a structured bosonic bath.

The package computes, with and without the rotating-wave approximation:
the self-consistent renormalization of the transition frequency, effective
decay rates under repeated measurement, Zeno times, quantum Zeno / anti-
Zeno regime classification, and the nonperturbative survival amplitude
from the equivalent memory-kernel equation.
"""

from .decay import (RateCurve, ZenoClassification, classify_zeno,
                    effective_rate, rate_curve, wigner_weisskopf_rate,
                    zeno_time)
from .errors import (ConfigError, DomainError, InfiniteZenoTime,
                     NonConvergent, NonFinite, StepTooCoarse, UsageError,
                     ZenodynError)
from .numerics import (FixedPointSpec, QuadratureSpec, integrate_semi_infinite,
                       integrate_windowed, solve_fixed_point, volterra_step)
from .renormalization import (RenormalizedSystem, SystemConfig, eta_map,
                              solve_renormalization, xi)
from .report import ScenarioConfig, main, parse_config, run_scenario
from .spectral import (BathSpectrum, ModulatedSpectrum, dephasing, g_of_omega,
                       g_prime, modulation_factor, spectral_moment)
from .survival import (SurvivalCurve, memory_kernel, rate_from_survival,
                       survival_curve)

__version__ = "0.1.0"

__all__ = [
    "BathSpectrum",
    "ModulatedSpectrum",
    "SystemConfig",
    "RenormalizedSystem",
    "RateCurve",
    "ZenoClassification",
    "SurvivalCurve",
    "QuadratureSpec",
    "FixedPointSpec",
    "ScenarioConfig",
    "g_of_omega",
    "modulation_factor",
    "g_prime",
    "dephasing",
    "spectral_moment",
    "xi",
    "eta_map",
    "solve_renormalization",
    "wigner_weisskopf_rate",
    "effective_rate",
    "rate_curve",
    "zeno_time",
    "classify_zeno",
    "memory_kernel",
    "survival_curve",
    "rate_from_survival",
    "integrate_semi_infinite",
    "integrate_windowed",
    "solve_fixed_point",
    "volterra_step",
    "parse_config",
    "run_scenario",
    "main",
    "ZenodynError",
    "DomainError",
    "NonFinite",
    "NonConvergent",
    "StepTooCoarse",
    "InfiniteZenoTime",
    "UsageError",
    "ConfigError",
]
