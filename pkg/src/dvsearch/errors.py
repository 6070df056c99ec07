"""Exception types raised across the package."""


class DvSearchError(Exception):
    """Base class for all package errors."""


class CapacityError(DvSearchError, ValueError):
    """Requested register layout exceeds the configured qubit cap."""


class DimensionError(DvSearchError, ValueError):
    """Two states (or a state and an array) disagree on layout or length."""


class NormalizationError(DvSearchError, ValueError):
    """A gate received a state whose 2-norm is not 1."""


class OracleRangeError(DvSearchError, ValueError):
    """An oracle produced a value outside [0, 2**n)."""


class OracleFileError(DvSearchError, ValueError):
    """An oracle file could not be parsed."""


class EncodingError(DvSearchError, ValueError):
    """A seed does not fit the candidate encoding template."""
