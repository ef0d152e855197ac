"""
Exception hierarchy for the schubert library.

Input errors (bad documents, axiom violations, oversized matroids) derive from
MatroidInputError and map to CLI exit code 2. Internal consistency failures
derive from ConsistencyError and map to exit code 1.
"""

from typing import Dict, Optional


class SchubertError(Exception):
    """Base class for all library errors"""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict:
        return {
            'error': self.__class__.__name__,
            'message': self.message,
            'details': self.details
        }


# Input errors

class MatroidInputError(SchubertError):
    """Raised for malformed or invalid matroid input"""


class ParseError(MatroidInputError):
    pass


class EmptyBases(MatroidInputError):
    pass


class UnequalCardinality(MatroidInputError):
    pass


class ExchangeAxiomFailure(MatroidInputError):
    pass


class ElementNotInGroundSet(MatroidInputError):
    pass


class GroundSetOverlap(MatroidInputError):
    pass


class NotAdmissible(MatroidInputError):
    pass


class MatroidTooLarge(MatroidInputError):
    pass


# Geometry and algebra errors

class GeometryError(SchubertError):
    """Raised when a geometric precondition is violated"""


class DimensionMismatch(GeometryError):
    pass


class DegreeMismatch(GeometryError):
    pass


class NotAFaceRelation(GeometryError):
    pass


class SupportNotContained(GeometryError):
    pass


class HasLoops(GeometryError):
    pass


class NotUnimodular(GeometryError):
    pass


class DivisionNotExact(SchubertError):
    """Polynomial division left a remainder"""


# Internal assertions; these must never fire on valid input

class ConsistencyError(SchubertError):
    pass


class SignConsistencyFailure(ConsistencyError):
    pass


class NotBalanced(ConsistencyError):
    pass


class DecompositionFailure(ConsistencyError):
    pass
