"""Exception hierarchy.

Configuration problems derive from ``ValueError`` and numerical failures from
``ArithmeticError`` so callers (and the CLI exit-code mapping) can tell them
apart without importing this module.
"""


class CantileverError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(CantileverError, ValueError):
    """Invalid parameters, grids or command-line configuration."""


class OrbitValidityError(ConfigError):
    """The orbit |u| <= A leaves the region where the equation is regular."""


class GridMismatchError(ConfigError):
    pass


class TargetOutsideOrbitError(ConfigError):
    pass


class NumericalError(CantileverError, ArithmeticError):
    """A computation could not reach the requested accuracy."""


class SingularMassError(NumericalError):
    pass


class ToleranceNotAchievable(NumericalError):
    pass


class DegenerateFitError(NumericalError):
    pass
