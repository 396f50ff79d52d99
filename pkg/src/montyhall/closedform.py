"""Closed-form win probabilities for the generalized games.

Notation used throughout: ``d`` doors, ``c`` cars, ``g = d - c`` goats,
``p`` doors picked first, ``o`` doors then opened by the host (all goats),
``q`` fresh doors picked after switching. Multi-round games use one pick per
round and a schedule ``o_1 .. o_s`` of openings.

The single-pick paths (``mh2_*``, ``mh4_*``) are direct products of a few
integers, so a hundred-million-door game costs the same as a three-door one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import binomial, falling_factorial
from .scenario import (
    OutcomePredicate,
    PhasePlan,
    Scenario,
    ValidatedGame,
    ValidationError,
    validate,
)

__all__ = [
    "DomainError",
    "UnsupportedSchedule",
    "SwitchReport",
    "AllCarsReport",
    "mh2_switch_probability",
    "mh2_improvement_factor",
    "mh3_denominator",
    "mh3_at_least_one_numerator",
    "mh3_anterior_at_least_one",
    "mh3_at_least_one_probability",
    "mh31_all_cars",
    "mh4_switch_terms",
    "mh4_switch_probability",
    "mh4_door_posteriors_raw",
    "mh4_door_posteriors",
    "mh4_improvement_factors",
    "closed_form_for",
]


class DomainError(ValueError):
    pass


class UnsupportedSchedule(DomainError):
    pass


def _direction(stay: Fraction, switch: Fraction) -> str:
    if switch > stay:
        return "increase"
    if switch < stay:
        return "decrease"
    return "unchanged"


@dataclass(frozen=True)
class SwitchReport:
    stay_probability: Fraction
    switch_probability: Fraction
    improvement_factor: Fraction | None
    direction: str

    @classmethod
    def compare(cls, stay: Fraction, switch: Fraction) -> "SwitchReport":
        factor = switch / stay if stay else None
        return cls(stay, switch, factor, _direction(stay, switch))


@dataclass(frozen=True)
class AllCarsReport(SwitchReport):
    """All-cars outcome; ``stay`` is the anterior value, ``switch`` the posterior one.

    ``both_phases`` is the chance that every pick in both phases is a car
    and ``conditional_factor`` the chance that all posterior picks are cars
    given that all anterior picks were.
    """

    both_phases: Fraction = Fraction(0)
    conditional_factor: Fraction = Fraction(0)


def _game(c: int, d: int, plan: PhasePlan, predicate: OutcomePredicate) -> ValidatedGame:
    try:
        return validate(Scenario(d, c), plan, predicate)
    except ValidationError as exc:
        raise DomainError(str(exc)) from None


# -- single pick, one switch -------------------------------------------------


def mh2_switch_probability(c: int, d: int, o: int) -> Fraction:
    """c(d-1) / (d(d-1-o)): chance of a car after switching once."""
    if not (1 <= c < d) or not 0 <= o <= d - c - 1:
        raise DomainError(f"need 1 <= c < d and 0 <= o <= d-c-1, got c={c}, d={d}, o={o}")
    return Fraction(c * (d - 1), d * (d - 1 - o))


def mh2_improvement_factor(d: int, o: int) -> Fraction:
    """(d-1)/(d-1-o); strictly above 1 exactly when something is opened."""
    if d < 2 or not 0 <= o <= d - 2:
        raise DomainError(f"need 0 <= o <= d-2, got d={d}, o={o}")
    return Fraction(d - 1, d - 1 - o)


# -- several picks, one switch -------------------------------------------------


def _check_mh3(c: int, g: int, o: int, p: int, q: int) -> None:
    if min(c, g) < 1 or p < 1 or o < 0:
        raise DomainError(f"need c, g, p >= 1 and o >= 0, got c={c}, g={g}, p={p}, o={o}")
    if q < 1:
        raise DomainError("at least one posterior pick is needed to switch")
    _game(c, c + g, PhasePlan.mh3(p, o, q), OutcomePredicate("posterior", "at_least", 1))


def mh3_denominator(d: int, p: int, o: int, q: int) -> int:
    """d!/(d-p)! * (d-p-o)!/(d-p-o-q)!, shared by every pick sequence."""
    if min(d, p, o, q) < 0 or d < p + o + q:
        raise DomainError(f"need d >= p+o+q with non-negative counts, got d={d}, p={p}, o={o}, q={q}")
    return falling_factorial(d, p) * falling_factorial(d - p - o, q)


def _ff(n: int, k: int) -> int:
    # falling factorial that treats a negative pool as empty
    return falling_factorial(n, k) if n >= 0 else (1 if k == 0 else 0)


def mh3_at_least_one_numerator(c: int, g: int, o: int, p: int, q: int) -> int:
    """Numerator N of P(at least one car among the q posterior picks) = N/D.

    x cars among the p first picks can be arranged C(p, x) ways and y cars
    among the q switch picks C(q, y) ways; the y = 0 term is the failure
    case and is left out.
    """
    _check_mh3(c, g, o, p, q)
    total = 0
    for x in range(p + 1):
        anterior = binomial(p, x) * _ff(c, x) * _ff(g, p - x)
        if not anterior:
            continue
        cars_left = c - x
        goats_left = g - o - (p - x)
        inner = sum(
            binomial(q, y) * _ff(cars_left, y) * _ff(goats_left, q - y) for y in range(1, q + 1)
        )
        total += anterior * inner
    return total


def mh3_anterior_at_least_one(c: int, d: int, p: int) -> Fraction:
    """1 - (d-c)!/(d-c-p)! / (d!/(d-p)!): keep all of the first p picks."""
    if not (1 <= c < d) or not 1 <= p <= d:
        raise DomainError(f"need 1 <= c < d and 1 <= p <= d, got c={c}, d={d}, p={p}")
    return 1 - Fraction(falling_factorial(d - c, p), falling_factorial(d, p))


def mh3_at_least_one_probability(scenario: Scenario, p: int, o: int, q: int) -> SwitchReport:
    c, g, d = scenario.cars, scenario.goats, scenario.doors
    switch = Fraction(mh3_at_least_one_numerator(c, g, o, p, q), mh3_denominator(d, p, o, q))
    stay = mh3_anterior_at_least_one(c, d, p)
    return SwitchReport.compare(stay, switch)


def mh31_all_cars(scenario: Scenario, p: int, o: int, q: int) -> AllCarsReport:
    """Every pick a car, judged on the anterior picks or on the posterior picks.

    Anterior: c!/(c-p)! over d!/(d-p)!.

    Posterior, averaged over what the first picks hid: summing
    C(p,x) (c)_x (g)_(p-x) (c-x)_q over x collapses (Vandermonde for falling
    factorials) to (c)_q (d-q)_p, so the value is
    (c)_q (d-q)_p / [ (d)_p (d-p-o)_q ].

    Both phases: c!/(c-p-q)! over d!/(d-p)! * (d-p-o)!/(d-p-o-q)!.
    """
    c, d = scenario.cars, scenario.doors
    if p < 1 or q < 1 or o < 0:
        raise DomainError(f"need p, q >= 1 and o >= 0, got p={p}, o={o}, q={q}")
    _game(c, d, PhasePlan.mh3(p, o, q), OutcomePredicate("posterior", "all_cars"))
    anterior_den = falling_factorial(d, p)
    posterior_block = falling_factorial(d - p - o, q)
    anterior = Fraction(falling_factorial(c, p), anterior_den)
    posterior = Fraction(
        falling_factorial(c, q) * falling_factorial(d - q, p), anterior_den * posterior_block
    )
    both = Fraction(falling_factorial(c, p + q), anterior_den * posterior_block)
    conditional = Fraction(_ff(c - p, q), posterior_block)
    report = SwitchReport.compare(anterior, posterior)
    return AllCarsReport(
        report.stay_probability,
        report.switch_probability,
        report.improvement_factor,
        report.direction,
        both_phases=both,
        conditional_factor=conditional,
    )


# -- single pick, several switches ------------------------------------------


def _check_schedule(c: int | None, d: int, schedule: Sequence[int]) -> tuple[int, ...]:
    sched = tuple(schedule)
    if not sched:
        raise DomainError("schedule needs at least one switch round")
    if any(isinstance(o, bool) or not isinstance(o, int) or o < 0 for o in sched):
        raise DomainError(f"openings must be non-negative integers, got {sched}")
    if c is not None:
        _game(c, d, PhasePlan.mh4(sched), OutcomePredicate("final-round", "at_least", 1))
    else:
        opened = 0
        for k, o in enumerate(sched, start=1):
            opened += o
            if d - k - opened < 1:
                raise DomainError(f"no door left to switch to in round {k}")
    return sched


def mh4_switch_terms(c: int, d: int, schedule: Sequence[int]) -> tuple[int, int]:
    """Unreduced numerator and denominator of the s-switch car probability.

    c (d-1) (d-2-o_1) ... (d-s-o_1-...-o_(s-1))
    over d (d-1-o_1) (d-2-o_1-o_2) ... (d-s-o_1-...-o_s).
    """
    sched = _check_schedule(c, d, schedule)
    num, den = c, d
    opened = 0
    for k, o in enumerate(sched, start=1):
        num *= d - k - opened
        opened += o
        den *= d - k - opened
    return num, den


def mh4_switch_probability(c: int, d: int, schedule: Sequence[int]) -> Fraction:
    return Fraction(*mh4_switch_terms(c, d, schedule))


def mh4_door_posteriors_raw(c: int, d: int, schedule: Sequence[int]) -> tuple[list[int], int]:
    """Car chances of the three still-closed picked/offered doors after two rounds.

    Returns numerators over the common denominator d(d-1-o_1)(d-2-o_1-o_2):
    the first pick, the door taken at the first switch, and the door taken
    at the second switch. A picked door is never opened, so each keeps the
    value it had when it was picked.
    """
    sched = tuple(schedule)
    if len(sched) != 2:
        raise UnsupportedSchedule(f"door posteriors are defined for two rounds, got {len(sched)}")
    num_final, den = mh4_switch_terms(c, d, sched)
    o1, o2 = sched
    first = c * (d - 1 - o1) * (d - 2 - o1 - o2)
    second = c * (d - 1) * (d - 2 - o1 - o2)
    return [first, second, num_final], den


def mh4_door_posteriors(c: int, d: int, schedule: Sequence[int]) -> list[Fraction]:
    nums, den = mh4_door_posteriors_raw(c, d, schedule)
    return [Fraction(n, den) for n in nums]


def mh4_improvement_factors(d: int, schedule: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(gain over never switching, gain of s switches over a single switch).

    Neither depends on the number of cars.
    """
    sched = _check_schedule(None, d, schedule)
    num = den = 1
    first_num = first_den = 1
    opened = 0
    for k, o in enumerate(sched, start=1):
        top = d - k - opened
        opened += o
        bottom = d - k - opened
        num *= top
        den *= bottom
        if k == 1:
            first_num, first_den = top, bottom
    from_stay = Fraction(num, den)
    from_first_switch = from_stay / Fraction(first_num, first_den)
    return from_stay, from_first_switch


# -- dispatch ------------------------------------------------------------------


def closed_form_for(game: ValidatedGame) -> Fraction | None:
    """Closed-form value of ``game`` when one applies, else ``None``."""
    plan, pred = game.plan, game.predicate
    c, d = game.cars, game.doors
    kind, seg = pred.kind, pred.segment

    if plan.is_three_phase():
        p, o, q = plan.anterior_picks, plan.openings[0], plan.posterior_picks
        if seg == "final-round":
            seg = "posterior"
        if seg == "posterior" and kind == "exactly" and pred.k == q:
            kind = "all_cars"
        if seg == "anterior" and kind == "exactly" and pred.k == p:
            kind = "all_cars"
        if kind == "at_least" and pred.k == 1:
            if seg == "posterior":
                return mh3_at_least_one_probability(game.scenario, p, o, q).switch_probability
            if seg == "anterior":
                return mh3_anterior_at_least_one(c, d, p)
        if kind == "all_cars":
            report = mh31_all_cars(game.scenario, p, o, q)
            return {
                "anterior": report.stay_probability,
                "posterior": report.switch_probability,
                "all": report.both_phases,
            }[seg]

    if plan.is_single_pick() and plan.switch_rounds >= 1:
        schedule = plan.openings
        slots = plan.segment_slots(seg)
        if kind == "position_is_car":
            j = slots[pred.k - 1]
        elif len(slots) == 1:
            j = slots[0]
        else:
            return None
        car = Fraction(c, d) if j == 0 else mh4_switch_probability(c, d, schedule[:j])
        if kind == "position_is_car" or kind == "all_cars":
            return car
        # a single pick: count predicates reduce to "car" / "goat" / "anything"
        if kind == "at_least":
            return car if pred.k == 1 else Fraction(1)
        return car if pred.k == 1 else 1 - car
    return None
