"""Exception hierarchy for ring construction, deciders and verification."""
from __future__ import annotations

from typing import Any, Optional


class RickartError(RuntimeError):
    """Base class for all testbench errors."""


class RingMismatchError(RickartError):
    """Raised when elements or subsets of different rings are combined."""


class NonAssociativeError(RickartError):
    """Raised when a structure-constant table fails associativity."""

    def __init__(self, i: int, j: int, l: int) -> None:
        super().__init__(f"(e{i}e{j})e{l} != e{i}(e{j}e{l}) for basis triple ({i}, {j}, {l})")
        self.triple = (i, j, l)


class IllDefinedError(RickartError):
    """Raised when a basis product is not killed by the basis orders."""

    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"product e{i}e{j} is not annihilated by the orders of e{i} and e{j}")
        self.pair = (i, j)


class BadUnityError(RickartError):
    """Raised when a declared unity is not a two-sided identity."""


class NonPositiveExponentError(RickartError):
    """Raised when a power is requested with exponent < 1."""


class WithinNotIdealError(RickartError):
    """Raised when a relative annihilator is requested inside a non-ideal."""


class CapExceededError(RickartError):
    """Raised when an exhaustive scan would exceed the configured element cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: {size} elements exceeds cap {cap}")
        self.size = size
        self.cap = cap


class InvolutionMismatchError(RickartError):
    """Raised when an involution is applied to a ring it was not built for."""


class NotIdempotentError(RickartError):
    """Raised when an idempotent is required but e*e != e."""


class NotAntiMultiplicativeError(RickartError):
    """Raised when (xy)* != y*x* for some pair."""

    def __init__(self, x: Any, y: Any) -> None:
        super().__init__(f"(xy)* != y*x* for x={x}, y={y}")
        self.pair = (x, y)


class NotInvolutiveError(RickartError):
    """Raised when (x*)* != x for some element."""

    def __init__(self, x: Any) -> None:
        super().__init__(f"(x*)* != x for x={x}")
        self.element = x


class NotAGroupError(RickartError):
    """Raised when a Cayley table fails a group axiom."""

    def __init__(self, reason: str, witness: Optional[tuple[int, ...]] = None) -> None:
        detail = f" (witness {witness})" if witness is not None else ""
        super().__init__(f"not a group: {reason}{detail}")
        self.reason = reason
        self.witness = witness


class NotPrimeError(RickartError):
    """Raised when a catalog parameter that must be prime is not."""


class PrimeConstraintViolatedError(RickartError):
    """Raised when a verification is requested for an excluded prime."""


class HypothesisFailedError(RickartError):
    """Raised when a claim's hypothesis does not hold for the input."""


class InvariantBreachError(RickartError):
    """Raised when two independent computations of the same quantity disagree."""


class ParseError(RickartError):
    """Raised when an expression or document cannot be parsed."""

    def __init__(self, message: str, line: int = 1, col: int = 1) -> None:
        super().__init__(f"{message} (line {line}, col {col})")
        self.message = message
        self.line = line
        self.col = col


class UnknownLabelError(ParseError):
    """Raised when an element expression names a label the ring does not have."""


class IllegalIntegerCoefficientError(ParseError):
    """Raised when an element expression needs integer multiples of a missing unit."""


class MalformedTableError(RickartError):
    """Raised when a structure-constant table has the wrong shape or entries."""
