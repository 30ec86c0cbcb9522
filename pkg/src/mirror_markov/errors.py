"""Exception types shared across the package."""

from __future__ import annotations

import enum


class MirrorMarkovError(Exception):
    """Base class for every error raised by this package."""


class NotDivisible(MirrorMarkovError):
    """Exact division left a nonzero remainder (or a non-integer quotient)."""

    def __init__(self, num, den, message: str | None = None):
        self.num = num
        self.den = den
        super().__init__(message or f"({num}) is not divisible by ({den})")


class NegativeExponent(MirrorMarkovError):
    pass


class NotSymmetric(MirrorMarkovError):
    pass


class ZeroPoint(MirrorMarkovError, ZeroDivisionError):
    pass


class NonRealValue(MirrorMarkovError):
    pass


class NotUnimodular(MirrorMarkovError):
    pass


class OutOfRange(MirrorMarkovError):
    pass


class InternalInconsistency(MirrorMarkovError):
    """Two routes that must agree produced different results."""


class AmbiguousMax(MirrorMarkovError):
    pass


class NotConstant(MirrorMarkovError):
    pass


class RejectReason(enum.Enum):
    NOT_SYMMETRIC = "NotSymmetric"
    ZERO_ENTRY = "ZeroEntry"
    NOT_A_SOLUTION = "NotASolution"
    NOT_ON_TREE = "NotOnTree"


class Rejected(MirrorMarkovError):
    """A triple failed the squared-tree membership test."""

    def __init__(self, reason: RejectReason, detail: str = ""):
        self.reason = reason
        self.detail = detail
        msg = reason.value if not detail else f"{reason.value}: {detail}"
        super().__init__(msg)


class Inconsistent(MirrorMarkovError):
    """The a_l search found a branch step that breaks the conjectured shape."""

    def __init__(self, n: int, got, expected, message: str = ""):
        self.n = n
        self.got = got
        self.expected = expected
        super().__init__(message or f"step n={n}: got {got}, expected {expected}")
