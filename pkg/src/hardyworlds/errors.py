"""Exception types shared across the package."""

from __future__ import annotations


class HardyWorldsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HardyWorldsError, ValueError):
    """A numeric argument lies outside its permitted range."""


class InvalidModelError(HardyWorldsError, ValueError):
    """A state, basis, table, or model file violates a structural invariant."""


class InconsistentModelError(HardyWorldsError):
    """A probability table leaves some setting pair with no possible outcome.

    Every pair of experiment choices must admit at least one outcome with
    positive probability; otherwise free choice of settings is contradicted
    and no possible-world model exists.
    """


class UnknownWorldError(HardyWorldsError, KeyError):
    """A world passed to an evaluator does not belong to the model."""


class FormulaError(HardyWorldsError):
    """Base class for formula language errors."""


class FormulaSyntaxError(FormulaError):
    """The formula text cannot be tokenized or parsed.

    Carries the character offset at which the problem was detected.
    """

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CounterfactualAntecedentError(FormulaError):
    """The left side of []-> is not a bare experiment-choice atom."""


class EntailmentNestingError(FormulaError):
    """An => connective appears anywhere other than the formula root."""
