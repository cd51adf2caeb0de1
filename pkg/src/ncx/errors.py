class NcxError(Exception):
    """Base class for all library errors."""


class FieldSpecError(NcxError, ValueError):
    """Invalid coefficient-field description (non-prime p, q out of range, N < 2)."""


class AssumptionError(NcxError, ValueError):
    """The field fails the root-of-unity assumption required by an operation."""


class ShapeError(NcxError, ValueError):
    """Matrix or graded-map shapes are inconsistent."""


class ContainmentError(NcxError, ValueError):
    """A subspace expected to lie inside another does not."""


class NotHomomorphismError(NcxError, ValueError):
    """A graded map does not commute with the N-differentials."""


class SchemaError(NcxError, ValueError):
    """Malformed JSON input."""
