"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LndLabError(Exception):
    """Base class for all errors raised by lnd_lab."""


# poly-core

class PolySyntaxError(LndLabError, ValueError):
    def __init__(self, message: str, position: int, expected: str = ""):
        self.position = position
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class UnknownVariableError(LndLabError, ValueError):
    def __init__(self, name: str, variables=()):
        self.name = name
        super().__init__(f"unknown variable {name!r}; ring has {list(variables)}")


class NegativePowerOfNonInvertibleError(LndLabError, ValueError):
    pass


class RingMismatchError(LndLabError, ValueError):
    pass


class ExponentOverflowError(LndLabError, OverflowError):
    pass


class InvertibleVariableError(LndLabError, ValueError):
    pass


class NonUnitImageForInvertibleError(LndLabError, ValueError):
    pass


class NotUnivariateError(LndLabError, ValueError):
    pass


# ideal-engine / algebra

class LaurentUnsupportedError(LndLabError, ValueError):
    pass


class ConstantInputError(LndLabError, ValueError):
    pass


class ZeroRelationError(LndLabError, ValueError):
    pass


class AlgebraMismatchError(LndLabError, ValueError):
    pass


# derivation

class WellDefinednessError(LndLabError):
    """A generator table does not preserve the relation ideal.

    ``relation`` is the offending relation and ``residue`` the nonzero normal
    form of its stability sum.
    """

    def __init__(self, relation, residue):
        self.relation = relation
        self.residue = residue
        super().__init__(f"relation {relation} is not preserved: residue {residue}")


# grading

class ZeroDerivationError(LndLabError, ValueError):
    pass


class DimensionMismatchError(LndLabError, ValueError):
    pass


# catalog

class NotInSError(LndLabError, ValueError):
    pass


class GcdViolationError(LndLabError, ValueError):
    pass


class ExponentTooSmallError(LndLabError, ValueError):
    pass


class ConstraintViolationError(LndLabError, ValueError):
    def __init__(self, total, bound):
        self.total = total
        self.bound = bound
        super().__init__(f"reciprocal sum {total} exceeds bound {bound}")


# invariant-toolkit

class MixedAlgebrasError(LndLabError, ValueError):
    pass


class UncertifiedDerivationError(LndLabError, ValueError):
    pass


class SearchSpaceTooLargeError(LndLabError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"search grid has {count} candidate tables, limit is {limit}")


# cli

class SchemaError(LndLabError, ValueError):
    def __init__(self, path: str, field: str, message: str):
        self.path = path
        self.field = field
        super().__init__(f"{path}: {field}: {message}")
