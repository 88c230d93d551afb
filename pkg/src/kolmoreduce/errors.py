"""Exception types shared across the package."""


class KolmoreduceError(Exception):
    """Base class for all errors raised by this package."""


class EmptyDistributionError(KolmoreduceError, ValueError):
    """No support point carries positive mass."""


class BadMassError(KolmoreduceError, ValueError):
    """Probabilities are negative, non-finite, or do not sum to one."""


class NonFiniteValueError(KolmoreduceError, ValueError):
    """A support value is NaN or infinite."""


class BadMError(KolmoreduceError, ValueError):
    """Requested support budget m is below one."""


class BadEpsError(KolmoreduceError, ValueError):
    """Trim tolerance outside the open interval (0, 1)."""


class TooLargeError(KolmoreduceError, ValueError):
    """Input exceeds the exhaustive-search guard."""


class SupportExplosionError(KolmoreduceError, RuntimeError):
    """Exact tree evaluation exceeded the support-size cap."""
