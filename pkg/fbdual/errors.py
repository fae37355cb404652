from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from fractions import Fraction
    from pathlib import Path


class FbDualError(Exception):
    raw_message: str = None
    exit_code: int = 1

    def __init__(self, message: str | None = None):
        if message is None:
            message = self.raw_message
        self.raw_message = message
        super().__init__(f"ERROR: fb-dual: {message}")

    @classmethod
    def create(cls, message: str):
        return cls(message)


# algebra


class EvaluationAtZeroError(FbDualError):
    raw_message = "cannot evaluate a Laurent polynomial at 0."


class InfiniteMultiplicityError(FbDualError):
    raw_message = "the zero polynomial has infinite factor multiplicity."


class UnitFactorError(FbDualError):
    def __init__(self, factor: object):
        super().__init__(
            f"factor '{factor}' is zero or a unit monomial, multiplicity "
            f"is undefined.",
        )


class NotAUnitError(FbDualError):
    def __init__(self, value: object):
        super().__init__(f"'{value}' is not a unit monomial.")


class FieldMismatchError(FbDualError):
    def __init__(self, q1: int, q2: int):
        super().__init__(
            f"cannot combine values over Q(sqrt({q1})) and Q(sqrt({q2})).",
        )


class BothZeroError(FbDualError):
    raw_message = "extended euclid needs at least one nonzero polynomial."


class ShapeMismatchError(FbDualError):
    def __init__(self, left: tuple[int, int], right: tuple[int, int]):
        super().__init__(
            f"matrix shapes {left[0]}x{left[1]} and {right[0]}x{right[1]} "
            f"are not compatible.",
        )


# filters


class DilationMismatchError(FbDualError):
    def __init__(self, m1: int, m2: int):
        super().__init__(f"dilation mismatch: {m1} != {m2}.")


class InvalidDilationError(FbDualError):
    exit_code = 64

    def __init__(self, dilation: int):
        super().__init__(f"dilation must be an integer >= 2, got {dilation}.")


class FilterRoleMismatchError(FbDualError):
    exit_code = 64

    def __init__(self, role: str, total: Fraction):
        super().__init__(
            f"filter tagged '{role}' has taps summing to {total}.",
        )


class ZeroFilterError(FbDualError):
    raw_message = "operation is undefined for the zero filter."


class NotLowpassError(FbDualError):
    exit_code = 3

    def __init__(self, name: str):
        super().__init__(
            f"filter '{name}' is not a sqrt-q normalized lowpass filter.",
        )


class ZeroAccuracyError(FbDualError):
    exit_code = 3

    def __init__(self, name: str):
        super().__init__(
            f"filter '{name}' has zero accuracy, a positive accuracy is "
            f"required.",
        )


class SingularParameterError(FbDualError):
    exit_code = 6

    def __init__(self, a: Fraction):
        super().__init__(
            f"Burt-Adelson cofilter is singular at a = {a} (requires "
            f"a != 1/4).",
        )


# bezout / committee / completion


class NonBiorthogonalError(FbDualError):
    exit_code = 2

    def __init__(self, name: str = "f", other: str = "h"):
        super().__init__(f"filter '{name}' is not biorthogonal to '{other}'.")


class NoFirDualError(FbDualError):
    exit_code = 4

    def __init__(self, gcd: object):
        super().__init__(
            f"polyphase components share the factor '{gcd}', no FIR filter "
            f"is biorthogonal to h.",
        )


class UnsupportedDilationError(FbDualError):
    exit_code = 7

    def __init__(self, dilation: int, what: str):
        super().__init__(
            f"{what} is only available for dilation 2 (got {dilation}), "
            f"supply the cofilter with --f instead.",
        )


class CompletionUnsupportedError(FbDualError):
    exit_code = 5
    raw_message = (
        "no polyphase component of f is a unit monomial, the filter bank "
        "cannot be completed."
    )


# io


class MalformedInputError(FbDualError):
    exit_code = 64

    def __init__(self, source: str | Path, reason: str):
        super().__init__(f"could not read '{source}': {reason}")


class InvalidArgumentError(FbDualError):
    exit_code = 64


class EmptyCascadeError(FbDualError):
    raw_message = "cascade result has no samples to export."


class VerificationFailedError(FbDualError):
    exit_code = 1

    def __init__(self, what: str):
        super().__init__(f"verification failed: {what}")
