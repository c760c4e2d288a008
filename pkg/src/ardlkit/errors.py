"""Exception types shared across the package.

Every exception carries a stable ``category`` slug so the CLI and the service
can emit machine-parseable error codes without string matching on messages.
"""

from __future__ import annotations


class ArdlkitError(Exception):
    """Base error; subclasses override ``category``."""

    category = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DataError(ArdlkitError):
    category = "data"


class ParseError(ArdlkitError):
    category = "parse"


class AlignmentError(ArdlkitError):
    category = "alignment"


class TransformError(ArdlkitError):
    category = "transform"


class ShiftError(ArdlkitError):
    category = "shift"


class DiffError(ArdlkitError):
    category = "diff"


class SampleTooSmallError(ArdlkitError):
    category = "sample_too_small"


class SingularDesignError(ArdlkitError):
    category = "singular_design"


class DegreesOfFreedomError(ArdlkitError):
    category = "degrees_of_freedom"


class SampleMismatchError(ArdlkitError):
    category = "sample_mismatch"


class DegenerateRegressionError(ArdlkitError):
    category = "degenerate_regression"


class NormalizationError(ArdlkitError):
    category = "normalization"


class SpecError(ArdlkitError):
    category = "spec"


class UnknownDgpError(ArdlkitError):
    category = "unknown_dgp"


class ConfigError(ArdlkitError):
    category = "config"


class IoError(ArdlkitError):
    category = "io"
