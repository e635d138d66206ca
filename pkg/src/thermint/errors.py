"""Exception types shared across the package."""


class ThermintError(Exception):
    """Base class for all thermint errors."""


class StructureDegenerateError(ThermintError):
    """The flat map of an almost-cosymplectic structure is singular at a point."""


class TemperatureDegenerateError(ThermintError):
    """A temperature-like quantity (dH/dS, dL/dS or D_S L_d) vanished."""


class ConvergenceError(ThermintError):
    """Newton iteration failed to converge.

    Carries ``step_index`` when raised from a path integration so the
    caller can tell where the run broke down.
    """

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index


class DomainError(ThermintError):
    """A state left the physical domain of the system (e.g. piston x <= 0)."""


class ConfigError(ThermintError):
    """Invalid experiment configuration."""
