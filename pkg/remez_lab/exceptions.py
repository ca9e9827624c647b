"""
Exception hierarchy for remez_lab.
"""


class RemezLabError(Exception):
    """Base class for all errors raised by remez_lab."""


class InvalidMultiIndexError(RemezLabError, ValueError):
    """A multi-index has the wrong length or an entry outside {0, ..., K-1}."""


class DimensionMismatchError(RemezLabError, ValueError):
    """An evaluation point does not match the number of variables."""


class OrderMismatchError(RemezLabError, ValueError):
    """Two cyclotomic integers live in rings of different order."""


class CapExceededError(RemezLabError):
    """A grid enumeration would exceed the configured cap."""


class IncompleteSamplesError(RemezLabError, ValueError):
    """A sample table does not cover the whole group."""


class OutsideLiftRadiusError(RemezLabError, ValueError):
    """A point lies outside the radius where moment lifts are guaranteed."""


class UndefinedSupportError(RemezLabError, ValueError):
    """The maximum support size of the zero polynomial is undefined."""


class NonPrimeModulusError(RemezLabError, ValueError):
    """An operation only characterized for odd prime moduli got another one."""


class InvalidProjectionSetError(RemezLabError, ValueError):
    """A spectral set is not a maximal inseparable-compatible set."""


class CertificateError(RemezLabError):
    """A certificate computation lost too much precision."""


class MomentSystemError(RemezLabError):
    """The moment matrix could not be inverted to the required accuracy."""


class PolyFormatError(RemezLabError, ValueError):
    """A JSON polynomial document is malformed."""


class ConfigurationError(RemezLabError, ValueError):
    """A configuration value or environment override is invalid."""
