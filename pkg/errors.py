"""
Error types shared by the tomography pipeline.

Every failure the pipeline can signal carries an ErrorKind so the CLI can
map it to an exit code and a machine-readable error object.
"""

from enum import Enum


class ErrorKind(str, Enum):
    """Categories of pipeline failures"""
    INVALID_PARAMETERS = "invalid_parameters"
    DIMENSION = "dimension"
    INVARIANT_VIOLATION = "invariant_violation"
    NEAR_SINGULAR = "near_singular"
    COVERAGE = "coverage"
    NORMALIZATION = "normalization"
    PARSE = "parse"


class TomographyError(Exception):
    """Base class for all pipeline errors"""
    kind: ErrorKind = ErrorKind.INVALID_PARAMETERS

    def to_dict(self) -> dict:
        return {"error": self.kind.value, "message": str(self)}


class InvalidParameterError(TomographyError):
    kind = ErrorKind.INVALID_PARAMETERS


class DimensionError(TomographyError):
    kind = ErrorKind.DIMENSION


class InvariantViolationError(TomographyError):
    kind = ErrorKind.INVARIANT_VIOLATION


class NearSingularError(TomographyError):
    """Kernel parameters inside the guard band; use the exact limit instead"""
    kind = ErrorKind.NEAR_SINGULAR


class CoverageError(TomographyError):
    kind = ErrorKind.COVERAGE


class NormalizationError(TomographyError):
    kind = ErrorKind.NORMALIZATION


class ParseError(TomographyError):
    kind = ErrorKind.PARSE
