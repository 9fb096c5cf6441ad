"""Exception hierarchy.

Every error that can reach the command line carries an ``exit_code``; the
CLI maps exceptions to process exit codes through this attribute only.
"""

from __future__ import annotations


class GWCoverError(Exception):
    exit_code = 1


class ParseError(GWCoverError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int = 1, col: int = 1):
        self.line = line
        self.col = col
        self.bare_message = message
        super().__init__(f"line {line}, column {col}: {message}")


class ValidationError(GWCoverError, ValueError):
    exit_code = 3


class WrongDegreeError(ValidationError):
    pass


class NonSquareBasePointError(ValidationError):
    pass


class SingularCurveError(ValidationError):
    pass


class CharacteristicError(ValidationError):
    """An integer that must be invertible in the base field is not."""


class CapacityError(GWCoverError):
    exit_code = 4


class MNotInvertibleError(GWCoverError):
    exit_code = 5


class CrossCheckError(GWCoverError):
    exit_code = 6


class NonIsolatedError(GWCoverError, ValueError):
    """A zero or critical point that was expected to be isolated is not."""

    exit_code = 3


class PositiveDimensionalError(NonIsolatedError):
    pass


class DegenerateFormError(GWCoverError, ValueError):
    exit_code = 3


class FieldMismatchError(GWCoverError, ValueError):
    exit_code = 3
