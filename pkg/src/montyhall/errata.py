"""Known arithmetic discrepancies in the source derivations, as data.

Each entry has a stable identifier and fires only for the games whose
computation it concerns. The notes state the printed value and the value
the exact routes produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .scenario import ValidatedGame

__all__ = ["Erratum", "ERRATA", "notes_for", "WITH_REPLACEMENT_PRINTED"]


@dataclass(frozen=True)
class Erratum:
    id: str
    applies: Callable[[ValidatedGame, str], bool]
    describe: Callable[[ValidatedGame], str]

    def note(self, game: ValidatedGame) -> str:
        return f"{self.id}: {self.describe(game)}"


def _shape(game: ValidatedGame) -> tuple[int, int, int, int, int] | None:
    if not game.plan.is_three_phase():
        return None
    plan = game.plan
    return game.doors, game.cars, plan.anterior_picks, plan.openings[0], plan.posterior_picks


# switch value printed for 6 doors, 1 car, 2 first picks, 1 switch pick, by doors opened
WITH_REPLACEMENT_PRINTED = {1: Fraction(25, 108), 2: Fraction(25, 72), 3: Fraction(25, 36)}


def _anterior_724(game: ValidatedGame, variant: str) -> bool:
    s = _shape(game)
    return s is not None and s[:3] == (12, 5, 3) and game.predicate.kind == "at_least"


def _with_replacement(game: ValidatedGame, variant: str) -> bool:
    s = _shape(game)
    return s is not None and s[:3] == (6, 1, 2) and s[4] == 1 and s[3] in WITH_REPLACEMENT_PRINTED


def _allcars(game: ValidatedGame, variant: str) -> bool:
    return variant == "mh31" or (
        game.plan.is_three_phase() and game.predicate.kind == "all_cars"
    )


def _max_opening_factor(game: ValidatedGame, variant: str) -> bool:
    plan = game.plan
    return (
        plan.is_three_phase()
        and plan.anterior_picks == plan.posterior_picks == 1
        and (game.doors, plan.openings[0]) == (123456789, 111111110)
    )


def _mh4_goat_term(game: ValidatedGame, variant: str) -> bool:
    plan = game.plan
    return plan.is_single_pick() and plan.switch_rounds == 2


_WITHOUT_REPLACEMENT = {1: "2/9", 2: "1/3", 3: "2/3"}


def _describe_with_replacement(game: ValidatedGame) -> str:
    o = game.plan.openings[0]
    printed = WITH_REPLACEMENT_PRINTED[o]
    return (
        f"printed switch value {printed.numerator}/{printed.denominator} and first-picks value "
        "11/36 = 1 - (5/6)(5/6) treat the two first picks as drawn with replacement; without "
        "replacement the first picks hold the car with probability 1/3 and the switch value is "
        f"{_WITHOUT_REPLACEMENT[o]}"
    )


ERRATA = (
    Erratum(
        "anterior-seven-over-twenty-four",
        _anterior_724,
        lambda game: (
            "printed chance of no car in the 3 first picks, 7/24 (about 29.2%, hence 70.8% for at "
            "least one), does not equal 7*6*5/(12*11*10) = 7/44; the first picks win with 37/44 "
            "(about 84.1%), so switching to 2 doors (125/154, about 81.2%) lowers the chance"
        ),
    ),
    Erratum("with-replacement-first-picks", _with_replacement, _describe_with_replacement),
    Erratum(
        "all-cars-denominator",
        _allcars,
        lambda game: (
            "printed all-cars denominator carries (d-o)!; the availability chain gives "
            "d!/(d-p)! * (d-p-o)!/(d-p-o-q)!, which is what is computed here and what the "
            "enumeration confirms"
        ),
    ),
    Erratum(
        "max-opening-factor",
        _max_opening_factor,
        lambda game: (
            "printed improvement factor 12345678 for opening 111111110 of 123456789 doors is the "
            "denominator d-1-o alone; (d-1)/(d-1-o) = 123456788/12345678, about 10.0000008"
        ),
    ),
    Erratum(
        "two-switch-goat-term",
        _mh4_goat_term,
        lambda game: (
            "printed third two-switch sequence (car, goat, car) uses g-o_2 for the goat pick; the "
            "availability chain gives g-o_1. The corrected term is the one summed into the "
            "two-switch numerator, so the final value is unaffected"
        ),
    ),
)


def notes_for(game: ValidatedGame, variant: str = "custom") -> list[str]:
    return [e.note(game) for e in ERRATA if e.applies(game, variant)]
