"""Exception types shared across the package."""


class SpinDivError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(SpinDivError):
    """Input matrix fails the Hermitian symmetry check."""


class NoConvergenceError(SpinDivError):
    """Iterative eigensolver exhausted its sweep budget."""


class DimensionMismatchError(SpinDivError):
    """Operands have incompatible shapes."""


class QuadratureError(SpinDivError):
    """Frequency quadrature exhausted its panel budget before the tail criterion was met."""


class NonPositiveFrequencyError(SpinDivError):
    """Thermal occupation requested at omega <= 0."""


class StepSizeError(SpinDivError):
    """Integration step too large for the requested configuration."""


class ConfigError(SpinDivError):
    """Invalid run configuration; the message names the offending key."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"config key '{key}': {message}")
