"""Exception hierarchy for ctmseq."""


class CTMSeqError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(CTMSeqError, ValueError):
    """A text, pattern or sequence was empty."""


class InvalidInterval(CTMSeqError, ValueError):
    """Interval endpoints violate ``1 <= lo <= hi`` or mix sentinels."""


class InvalidUniverse(CTMSeqError, ValueError):
    pass


class DuplicateKey(CTMSeqError, KeyError):
    """An interval with the same right endpoint is already stored.

    Under the matcher's maintenance protocol this cannot happen, so seeing it
    means a bug in the caller rather than bad user data.
    """


class NotFound(CTMSeqError, KeyError):
    pass


class TracesUnavailable(CTMSeqError):
    """Traces were requested but the back-pointer tables were not kept."""


class TooLarge(CTMSeqError):
    """Brute-force enumeration would exceed the configured budget."""
