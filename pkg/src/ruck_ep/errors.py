"""Exception hierarchy shared across the package.

CLI exit codes map onto this hierarchy: usage errors exit 1, data/schema
errors exit 2, numerical failures exit 3.
"""

from __future__ import annotations


class RuckEpError(Exception):
    """Base class for all package errors."""


class DataError(RuckEpError):
    """Base for input-data problems (CLI exit code 2)."""


class SchemaError(DataError):
    """A required column or field is missing or malformed."""


class RowError(DataError):
    """A single data row failed to parse.

    Carries the 1-based line number of the offending row.
    """

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ZoneMappingError(DataError):
    """A zone label has no entry in the zone map."""


class DomainError(DataError, ValueError):
    """Input is outside the model's valid domain (e.g. a kick from x < 5 m)."""


class BundleError(DataError):
    """A model bundle is missing, incomplete, or version-incompatible."""


class NumericError(RuckEpError):
    """Base for numerical failures (CLI exit code 3)."""


class SingularDesignError(NumericError):
    """Design matrix is rank deficient.

    ``column`` identifies the first column that is linearly dependent on
    the ones before it.
    """

    def __init__(self, column: int, label: str | None = None):
        name = label if label is not None else f"column {column}"
        super().__init__(f"singular design matrix: {name} is linearly dependent")
        self.column = column
        self.label = label


class NonConvergenceError(NumericError):
    """Iterative fit failed to converge; carries the last iterate."""

    def __init__(self, message: str, coefficients=None, record=None):
        super().__init__(message)
        self.coefficients = coefficients
        self.record = record


class FitDomainError(NumericError):
    """Training data does not cover enough of the domain to fit."""


class SelectionError(NumericError):
    """No smoothing-parameter candidate produced a convergent fit."""
