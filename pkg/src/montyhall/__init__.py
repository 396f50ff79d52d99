"""Generalized Monty Hall games: exact probabilities, cross-checks and simulation."""

from .rationals import Rational, to_decimal, to_string
from .scenario import (
    OutcomePredicate,
    Open,
    PhasePlan,
    Pick,
    Scenario,
    ValidatedGame,
    ValidationError,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "to_decimal",
    "to_string",
    "OutcomePredicate",
    "Open",
    "PhasePlan",
    "Pick",
    "Scenario",
    "ValidatedGame",
    "ValidationError",
    "validate",
]
