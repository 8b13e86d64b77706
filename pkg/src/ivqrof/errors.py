from __future__ import annotations


class IVqROFError(ValueError):
    """Base class for invalid input to the fuzzy arithmetic and the pipeline."""


class IntervalOrderViolation(IVqROFError):
    pass


class RungConstraintViolation(IVqROFError):
    def __init__(self, message: str, excess: float) -> None:
        super().__init__(message)
        self.excess = excess


class NonPositiveScalar(IVqROFError):
    pass


class NonPositivePhi(IVqROFError):
    pass


class DomainError(IVqROFError):
    pass


class BothExponentsZero(IVqROFError):
    pass


class EmptyInput(IVqROFError):
    pass


class WeightDimensionMismatch(IVqROFError):
    pass


class WeightSumViolation(IVqROFError):
    pass


class Infeasible(IVqROFError):
    pass


class DocumentSyntaxError(IVqROFError):
    pass


class SchemaError(IVqROFError):
    pass


class CellError(IVqROFError):
    """A matrix entry failed validation; carries its position in the problem file."""

    def __init__(self, message: str, *, expert: str, row: int, col: int) -> None:
        super().__init__(f"expert {expert!r} row {row} col {col}: {message}")
        self.expert = expert
        self.row = row
        self.col = col


class NumericalDegeneracy(RuntimeError):
    """Arithmetic reached a state valid inputs cannot produce (NaN, broken invariant)."""


__all__ = [
    "IVqROFError",
    "IntervalOrderViolation",
    "RungConstraintViolation",
    "NonPositiveScalar",
    "NonPositivePhi",
    "DomainError",
    "BothExponentsZero",
    "EmptyInput",
    "WeightDimensionMismatch",
    "WeightSumViolation",
    "Infeasible",
    "DocumentSyntaxError",
    "SchemaError",
    "CellError",
    "NumericalDegeneracy",
]
