"""Exception types shared across the package.

Every error raised on a violated precondition derives from AlgebraError so
callers (and the CLI) can distinguish domain failures from genuine bugs.
"""


class AlgebraError(Exception):
    """Base class for all domain errors."""


class NotPrime(AlgebraError):
    pass


class RootUnavailable(AlgebraError):
    """No primitive N-th root of unity exists in F_p (N does not divide p-1)."""


class DivisionByZero(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class DimensionMismatch(AlgebraError):
    pass


class OrderMismatch(AlgebraError):
    """A matrix does not have the group-element order claimed for it."""


class NonDiagonalizable(AlgebraError):
    """Eigenspaces of a group element fail to span the ambient space."""


class NotInSpan(AlgebraError):
    """A vector or multivector does not lie in the span of the target frame."""


class ArityMismatch(AlgebraError):
    pass


class DegreeInhomogeneous(AlgebraError):
    """Terms of distinct cohomological degree mixed into one class."""


class BoundExceeded(AlgebraError):
    """Group closure exceeded the configured element bound."""


class CharacteristicTooSmall(AlgebraError):
    """p must exceed both dim V and the group order."""


class ContextMismatch(AlgebraError):
    """Operands built over incompatible contexts (field, group, or frame)."""


class OutOfRange(AlgebraError):
    pass


class FactorialNotInvertible(AlgebraError):
    """A factorial required by a cochain formula vanishes mod p."""


class IncompleteTable(AlgebraError):
    """A cochain evaluation table does not cover the requested tuples."""


class NotSymplecticOnComplement(AlgebraError):
    """The symplectic form degenerates on a moving subspace."""


class SpecError(AlgebraError):
    """Malformed problem specification or class file."""
