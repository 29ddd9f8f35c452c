"""Exception types shared across the package.

The CLI maps these onto exit codes: ValueError subclasses are input or
domain problems (exit 2), ResourceBudgetError and its subclasses are
resource exhaustion (exit 3).
"""


class DomainError(ValueError):
    """A formula was evaluated outside the range where it is defined."""


class TrailFormatError(ValueError):
    """A trail interchange file could not be parsed exactly."""


class InvalidTrailError(ValueError):
    """A trail failed structural validation (zero-length or repeated links)."""


class DimensionMismatchError(ValueError):
    """Trail and grid dimensions disagree."""


class DegenerateSegmentError(ValueError):
    """A segment predicate was asked about a zero-length segment."""


class ResourceBudgetError(RuntimeError):
    """An explicit resource budget (points, nodes, time) was exceeded."""


class GridSizeError(ResourceBudgetError):
    """Grid point count exceeds the configured enumeration cap."""
