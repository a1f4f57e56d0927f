"""Exception types shared across the toolkit.

Everything derives from ValueError so callers that only care about
"bad input" can catch one thing; the CLI maps each subclass to a
machine-readable error object.
"""

from __future__ import annotations


class ToolkitError(ValueError):
    """Base class for all squintkit errors."""

    def payload(self) -> dict:
        """Extra fields for the CLI's structured error output."""
        return {}


class ValidationError(ToolkitError):
    """An invariant or precondition was violated; message names the field."""


class RangeError(ToolkitError):
    """A query fell outside a valid interval."""

    def __init__(self, message: str, lower: float, upper: float):
        super().__init__(message)
        self.lower = lower
        self.upper = upper

    def payload(self) -> dict:
        return {"valid_interval": [self.lower, self.upper]}


class DomainError(ToolkitError):
    """A geometric argument left the domain where the model is defined."""


class BoundaryPeakError(ToolkitError):
    """Pattern maximum sits on the grid edge; the grid must be widened."""


class BeamwidthUndefinedError(ToolkitError):
    """Pattern never drops 3 dB below its peak on one side of the beam."""


class ResolutionError(ToolkitError):
    """Aperture sampling is too coarse for the requested electrical size."""


class SingularityError(ToolkitError):
    """A formula was evaluated at a documented singular point."""


class AlignmentError(ToolkitError):
    """Measured frequencies do not share a common azimuth sample set."""

    def __init__(self, message: str, frequencies: list[float]):
        super().__init__(message)
        self.frequencies = list(frequencies)

    def payload(self) -> dict:
        return {"offending_frequencies_hz": self.frequencies}


class GridError(ToolkitError):
    """Azimuth samples are not uniformly spaced."""


class ConfigError(ToolkitError):
    """Scenario file is missing, unparseable, or violates the schema."""
