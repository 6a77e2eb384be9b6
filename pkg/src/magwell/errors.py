"""Exception types shared across the package."""


class MagwellError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(MagwellError, ValueError):
    """Invalid or inconsistent configuration (bad parameters, bad grid)."""


class NumericsError(MagwellError, RuntimeError):
    """A numerical routine failed to reach its accuracy or convergence target."""

    def __init__(self, message, last_value=None):
        super().__init__(message)
        self.last_value = last_value


class NoBoundStateError(MagwellError):
    """The spectral equation has no root below the continuum threshold."""
