"""Exception types shared across the pipeline.

Contract violations raise InvalidArgumentError subclasses; the CLI maps
them to exit code 2 and everything else to exit code 1.
"""


class CtprogError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(CtprogError, ValueError):
    """An argument violates a documented precondition."""


class GeometryMismatchError(InvalidArgumentError):
    """Two grids that must share dims/spacing do not."""


class EmptyRegionError(InvalidArgumentError):
    """An operation requires a nonempty mask region."""


class UndefinedMetricError(InvalidArgumentError):
    """The metric is undefined for the given inputs (e.g. empty mask)."""


class SchemaError(InvalidArgumentError):
    """A file does not match its declared schema (columns, dims, dtype)."""


class NotFittedError(CtprogError, RuntimeError):
    """predict/transform called before fit."""
