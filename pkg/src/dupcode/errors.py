"""Exception hierarchy shared by every module."""


class DupCodeError(Exception):
    """Base class for all library errors."""


class AlphabetError(DupCodeError, ValueError):
    """A symbol lies outside [0, q-1] or two alphabets disagree."""


class InvalidEvent(DupCodeError, ValueError):
    """A duplication position/length is out of range or patterns overlap."""


class PreconditionError(DupCodeError, ValueError):
    """Parameters fall outside the regime where a decoder is proven correct."""


class NoMatch(DupCodeError):
    """No window satisfied the reverse-complement equality during decoding."""


class IllegalInput(DupCodeError, ValueError):
    """The input already satisfies the constraint the map is defined off of."""


class CorruptIndex(DupCodeError):
    """An index field recovered during unwinding is out of range."""


class CorruptField(DupCodeError):
    """An index or indicator field of an RLL codeword is out of range."""


class DecodeFail(DupCodeError):
    """No consistent original exists; the channel precondition was violated."""


class AmbiguousDecode(DecodeFail):
    """More than one original is consistent with the received word."""


class TooManyErrors(DecodeFail):
    """The received word is longer than the layout allows."""


class BudgetExceeded(DupCodeError):
    """An exhaustive computation would exceed its configured budget."""
