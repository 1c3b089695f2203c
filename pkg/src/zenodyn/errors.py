"""Exception types shared across the package."""


class ZenodynError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ZenodynError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonFinite(ZenodynError, ValueError):
    """An integrand or kernel returned NaN or infinity."""


class NonConvergent(ZenodynError, RuntimeError):
    """An iterative scheme exhausted its budget before reaching tolerance."""


class StepTooCoarse(ZenodynError, ValueError):
    """The time step cannot resolve the requested oscillation frequency."""


class InfiniteZenoTime(ZenodynError, ArithmeticError):
    """The integrated spectrum vanishes, so the initial quadratic decay
    coefficient is zero and the Zeno time diverges."""


class UsageError(ZenodynError):
    """Malformed command line (exit code 2)."""


class ConfigError(ZenodynError):
    """Contradictory or unparseable configuration values (exit code 2)."""
