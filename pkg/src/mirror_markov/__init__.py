"""Exact arithmetic for q-deformed Markov trees and their mirror square roots."""

from .errors import (
    AmbiguousMax,
    Inconsistent,
    InternalInconsistency,
    MirrorMarkovError,
    NegativeExponent,
    NonRealValue,
    NotConstant,
    NotDivisible,
    NotSymmetric,
    NotUnimodular,
    OutOfRange,
    Rejected,
    RejectReason,
    ZeroPoint,
)
from .polyring import LaurentPoly, SPoly, DualNumber, Gaussian, parse_poly

__version__ = "0.1.0"
