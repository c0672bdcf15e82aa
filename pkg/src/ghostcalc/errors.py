"""Exception types raised across the package."""


class GhostCalcError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(GhostCalcError):
    pass


class UnsupportedAlgebra(GhostCalcError):
    pass


class InvalidAlgebra(GhostCalcError):
    """Structure constants that fail antisymmetry or Jacobi."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Unsupported(GhostCalcError):
    pass


class AmbiguousPositivity(GhostCalcError):
    pass


class OrderingMismatch(GhostCalcError):
    pass


class NotCartanEven(GhostCalcError):
    pass


class NoIwasawa(GhostCalcError):
    pass


class NotGhostImage(GhostCalcError):
    pass


class GhostDimensionError(GhostCalcError):
    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension


class InvarianceError(GhostCalcError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MembershipError(GhostCalcError):
    """Target polynomial is not a possible ghost-centre image."""


class BudgetExceeded(GhostCalcError):
    pass


class InjectivityViolation(GhostCalcError):
    pass


class DecompositionMismatch(GhostCalcError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class CentralityError(GhostCalcError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NormalizationError(GhostCalcError):
    pass


class NotDominant(GhostCalcError):
    pass


class OracleViolation(GhostCalcError):
    pass


class ParseError(GhostCalcError):
    def __init__(self, message, text="", position=0, expected=None):
        self.text = text
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
