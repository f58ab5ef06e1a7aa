"""Exception hierarchy shared across the package."""


class LfphillipsError(Exception):
    """Base class for all package errors."""


class InputError(LfphillipsError):
    """Structurally invalid input: bad windows, gaps, empty overlaps, malformed rows."""


class DomainError(LfphillipsError):
    """Mathematically invalid input: non-positive levels, zero variance, u <= 0."""


class EstimationError(LfphillipsError):
    """Degenerate regression problem: collinear or zero-variance design."""


class RetrievalError(LfphillipsError):
    """Remote fetch failed and no cached payload is available."""


class ParseError(LfphillipsError):
    """Fetched or cached payload could not be parsed."""
