class MagnusError(Exception):
    """Base class for every error raised by magnus-towers."""


class UsageError(MagnusError):
    """Error raised when the arguments of an operation don't fit together (mismatched `d`, `p`, bad ranges, ...)."""


class WordParseError(UsageError):
    """Error raised when a group word doesn't follow the word grammar."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at column {position + 1}" if text else message)


class DocumentError(UsageError):
    """Error raised when a presentation document or one of the text forms can't be read."""


class NonPrimeError(UsageError):
    """Error raised when an integer expected to be prime isn't."""


class NotTameError(UsageError):
    """Error raised when a prime ell doesn't satisfy ell = 1 (mod p)."""


class DomainError(MagnusError):
    """Error raised when an answer doesn't exist mathematically (highest term of 0, no admissible cut pair, ...)."""


class InconclusiveError(MagnusError):
    """Error raised when an answer would need terms discarded by the truncation; raising the truncation may help."""

    def __init__(self, message: str, truncation: int):
        self.truncation = truncation
        super().__init__(f"{message} (inconclusive below truncation degree {truncation})")
