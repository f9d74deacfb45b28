"""Exception types shared across the package."""

from __future__ import annotations


class AddCompError(Exception):
    """Base class for all package errors."""


class ParseError(AddCompError, ValueError):
    pass


class UnknownLetter(AddCompError, KeyError):
    def __init__(self, letter):
        super().__init__(letter)
        self.letter = letter

    def __str__(self):
        return f"letter {self.letter!r} is not in the alphabet"


class NotProlongable(AddCompError):
    pass


class NonExpanding(AddCompError):
    pass


class DigitOutOfRange(AddCompError, ValueError):
    pass


class OutOfRange(AddCompError, IndexError):
    pass


class WindowTooSmall(AddCompError, ValueError):
    pass


class CapExceeded(AddCompError):
    """Raised when a prefix cap is reached before a count stabilized.

    ``partial`` holds whatever was computed on the largest prefix tried.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DidNotHalt(AddCompError):
    """The semigroup trick exceeded its state budget.

    This is the expected outcome for sequences taking infinitely many values.
    """

    def __init__(self, explored: int):
        super().__init__(f"semigroup closure not reached after {explored} states")
        self.explored = explored
