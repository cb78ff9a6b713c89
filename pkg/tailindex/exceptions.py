"""
Exception hierarchy shared by every tailindex app.

All errors derive from TailIndexError, itself a ValueError, so callers that
only care about "bad input" can catch ValueError.
"""


class TailIndexError(ValueError):
    """Base class for errors raised by tailindex."""


class DomainError(TailIndexError):
    """An argument lies outside the domain of a mathematical operation."""


class SampleIngestionError(TailIndexError):
    """Raw data could not be turned into an ordered sample."""


class OrderStatisticIndexError(TailIndexError, IndexError):
    """An upper order statistic index lies outside 1..n."""


class TieError(TailIndexError):
    """Order statistics an estimator divides by are tied."""


class RootAtInfinityError(TailIndexError):
    """The root equation has no finite solution (Z_n = 0)."""


class BracketCapError(TailIndexError):
    """No sign change was found inside the capped search bracket."""


class DegenerateMomentError(TailIndexError):
    """The moment estimator's second log-moment equals the squared Hill value."""


class UnsupportedLawError(TailIndexError):
    """The limit law of the regime has no explicit distribution function."""


class ConfigError(TailIndexError):
    """An experiment or command configuration is invalid."""
