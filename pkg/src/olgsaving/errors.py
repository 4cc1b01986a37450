"""Exception types raised by olgsaving.

Domain and configuration problems derive from ValueError so callers that
already catch ValueError keep working; numerical failures derive from
RuntimeError.
"""


class OLGSavingError(Exception):
    """Base class for every error raised by the package."""


class DomainError(OLGSavingError, ValueError):
    """An input lies outside the model's domain (wage, pledgeability, ...)."""


class ConfigError(OLGSavingError, ValueError):
    """A configuration file or value could not be parsed.

    Args:
        message: Human readable description.
        path: Optional path of the offending file.
        line: Optional 1-based line number.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class NumericalError(OLGSavingError, RuntimeError):
    """A numerical procedure failed (bracketing, inversion, estimation)."""


class BracketError(NumericalError):
    """The end points of a bracket do not straddle a root.

    Args:
        message: Description of the failing solve.
        lower: Lower end of the bracket.
        upper: Upper end of the bracket.
        f_lower: Residual at the lower end.
        f_upper: Residual at the upper end.
    """

    def __init__(self, message, lower, upper, f_lower, f_upper):
        self.lower = lower
        self.upper = upper
        self.f_lower = f_lower
        self.f_upper = f_upper
        super().__init__(
            f"{message}: f({lower!r})={f_lower!r}, f({upper!r})={f_upper!r}"
        )


class InversionError(NumericalError):
    """A value lies outside the range of a function being inverted."""


class RankDeficiencyError(NumericalError):
    """The demeaned regressor matrix does not have full column rank.

    Args:
        column: Name of the first regressor that adds no rank.
    """

    def __init__(self, column, message=None):
        self.column = column
        if message is None:
            message = f"regressor '{column}' is collinear after demeaning"
        super().__init__(message)


class RedrawLimitError(NumericalError):
    """A synthetic panel cell exhausted its shock redraw budget."""

    def __init__(self, country, year, limit):
        self.country = country
        self.year = year
        self.limit = limit
        super().__init__(
            f"country {country} year {year}: wage left (0, 2) after {limit} redraws"
        )
