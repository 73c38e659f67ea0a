from .exceptions import *
from .functions import *
from .internal_data import InternalData

__all__ = [
    "DocumentError",
    "DomainError",
    "ExitCode",
    "InconclusiveError",
    "InternalData",
    "MagnusError",
    "NonPrimeError",
    "NotTameError",
    "UsageError",
    "WordParseError",
    "parse_int_list",
    "to_indices",
]
