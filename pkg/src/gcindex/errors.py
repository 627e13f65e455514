"""Exception types raised across the package.

Everything derives from GciError so callers (and the CLI) can catch one
base class for domain/ingestion failures and map it to exit code 1.
"""

from __future__ import annotations


class GciError(Exception):
    """Base class for all domain and ingestion errors."""


# -- tree validation -------------------------------------------------------

class CycleError(GciError):
    """A cycle is reachable from the tree root."""


class WeightSumError(GciError):
    """Child weights at a node do not form a valid convex combination."""


class DanglingChildError(GciError):
    """A node references a child id that does not exist."""


# -- evaluation ------------------------------------------------------------

class DegenerateRangeError(GciError):
    """Normalization bounds with max <= min."""


class MissingLeafError(GciError):
    """Required (country, leaf) values are absent under the strict policy."""

    def __init__(self, missing, message=None):
        self.missing = tuple(missing)
        super().__init__(message or f"missing leaf values: {self.missing}")


class OutOfScaleError(GciError):
    """An un-normalized leaf value lies outside the 1-7 scale."""


# -- ranking ---------------------------------------------------------------

class MissingNodeError(GciError):
    """A score table lacks entries for the requested node."""


class EmptyIntersectionError(GciError):
    """Two rank tables share no (or too few) countries."""


# -- stats -----------------------------------------------------------------

class LengthMismatchError(GciError):
    """Paired vectors have different lengths."""


class NonPositiveExpectedError(GciError):
    """Chi-square expected counts must be strictly positive."""


class DegenerateAbscissaError(GciError):
    """Trend fit needs at least two distinct years."""


class ZeroVarianceError(GciError):
    """Correlation is undefined for a constant series."""


class ConvergenceError(GciError):
    """An internal iteration cap was breached; never a silent wrong answer."""


# -- what-if ---------------------------------------------------------------

class UnknownCountryError(GciError):
    """The scenario names a country absent from the score table."""


class OverrideOutOfScaleError(GciError):
    """A scenario override falls outside the 1-7 scale."""


class NotAnAncestorPathError(GciError):
    """The overridden node has no weighted path to the tree root."""


# -- ingestion / reports ----------------------------------------------------

class ParseError(GciError):
    """Malformed input row; message carries file, line and column context."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class DuplicateKeyError(GciError):
    """Duplicate (year, country, indicator) observation."""


class MissingClassError(GciError):
    """A country in the panel has no innovator-class entry."""


class SchemaError(GciError):
    """A tree config does not match the documented JSON schema."""


class UnsupportedFormatError(GciError):
    """emit_report cannot render this result kind in the requested format."""


class IoError(GciError):
    """Filesystem failure while reading or writing a report."""
