"""Exception types shared across the package."""


class SoilProbeError(Exception):
    """Base class for every error this package raises on purpose."""


class FrameError(SoilProbeError, ValueError):
    """A wire frame could not be parsed.

    ``position`` is the 0-based byte offset where parsing gave up,
    when that offset is known.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ShapeError(SoilProbeError, ValueError):
    """A decoded payload carries the wrong number of values."""


class RangeError(SoilProbeError, ValueError):
    """A value violates its documented physical range."""


class InfeasibleError(SoilProbeError):
    """The requested point layout cannot be satisfied."""


class DegenerateError(SoilProbeError):
    """Geometry input has no well-defined result."""


class EmptyInputError(SoilProbeError):
    """An operation that needs at least one sample received none."""


class ScenarioError(SoilProbeError):
    """A scenario document is missing, malformed, or inconsistent."""


class LogFormatError(SoilProbeError):
    """A sample-log line could not be decoded.  ``line_no`` is 1-based."""

    def __init__(self, message, line_no):
        super().__init__(message)
        self.line_no = line_no
