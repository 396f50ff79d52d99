"""Phase-level route: each pick phase is a draw without replacement from an urn.

The first ``p`` picks hide ``x`` cars with hypergeometric probability
``h(x; p, c, d)``. After the host opens ``opened`` goat doors, the switch
picks come from ``d - p - opened`` doors of which ``c - x`` are cars, so
``y`` cars turn up with ``h(y; posterior_picks, c - x, d - p - opened)``.

Symbol map to the appendix this follows (its letters clash with the rest
of the package):

=====================  ===================
appendix               here
=====================  ===================
N (balls in the vase)  ``population``
R / B (red / blue)     ``reds`` / ``blues``
n (balls drawn)        ``draws``
q (opened doors)       ``opened``
r (switch picks)       ``posterior_picks``
=====================  ===================
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import binomial
from .scenario import (
    OutcomePredicate,
    PhasePlan,
    Scenario,
    ValidatedGame,
    ValidationError,
    validate,
)

__all__ = [
    "UrnSample",
    "DomainError",
    "UnsupportedPredicate",
    "hypergeom_pmf",
    "chu_vandermonde_check",
    "two_phase_joint",
    "mh3_via_hypergeom",
    "hypergeom_for",
]


class DomainError(ValueError):
    pass


class UnsupportedPredicate(ValueError):
    pass


@dataclass(frozen=True)
class UrnSample:
    population: int
    reds: int
    draws: int

    def __post_init__(self) -> None:
        for name in ("population", "reds", "draws"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
        if self.reds > self.population or self.draws > self.population:
            raise ValueError(f"reds and draws cannot exceed the population: {self}")

    @property
    def blues(self) -> int:
        return self.population - self.reds


def hypergeom_pmf(r: int, urn: UrnSample) -> Fraction:
    """P(exactly r reds among the draws); zero outside the support."""
    blue_draws = urn.draws - r
    if r < 0 or blue_draws < 0:
        return Fraction(0)
    return Fraction(
        binomial(urn.reds, r) * binomial(urn.blues, blue_draws),
        binomial(urn.population, urn.draws),
    )


def chu_vandermonde_check(urn: UrnSample) -> Fraction:
    """Total pmf mass; exactly 1 for every valid urn."""
    return sum((hypergeom_pmf(r, urn) for r in range(urn.draws + 1)), Fraction(0))


def two_phase_joint(
    x: int, y: int, p: int, r: int, scenario: Scenario, opened: int
) -> Fraction:
    """P(x cars among the first p picks and y cars among the r switch picks)."""
    try:
        validate(scenario, PhasePlan.mh3(p, opened, r), OutcomePredicate("posterior", "at_least", 1))
    except ValidationError as exc:
        raise DomainError(str(exc)) from None
    c, d = scenario.cars, scenario.doors
    first = hypergeom_pmf(x, UrnSample(d, c, p))
    if not first:
        return first
    return first * hypergeom_pmf(y, UrnSample(d - p - opened, c - x, r))


def mh3_via_hypergeom(
    scenario: Scenario, p: int, o: int, q: int, predicate: OutcomePredicate
) -> Fraction:
    """Sum the joint law over every (x, y) the predicate accepts."""
    if not predicate.count_based:
        raise UnsupportedPredicate("positional predicates need the enumeration route")
    plan = PhasePlan.mh3(p, o, q)
    try:
        validate(scenario, plan, predicate)
    except ValidationError as exc:
        raise DomainError(str(exc)) from None
    segment = "posterior" if predicate.segment == "final-round" else predicate.segment

    def accepted(x: int, y: int) -> bool:
        if segment == "anterior":
            return predicate.accepts_count(x, p)
        if segment == "posterior":
            return predicate.accepts_count(y, q)
        return predicate.accepts_count(x + y, p + q)

    return sum(
        (
            two_phase_joint(x, y, p, q, scenario, o)
            for x in range(p + 1)
            for y in range(q + 1)
            if accepted(x, y)
        ),
        Fraction(0),
    )


def hypergeom_for(game: ValidatedGame) -> Fraction | None:
    """Value of ``game`` by this route, or ``None`` when the route does not apply."""
    if not game.plan.is_three_phase() or not game.predicate.count_based:
        return None
    plan = game.plan
    return mh3_via_hypergeom(
        game.scenario, plan.anterior_picks, plan.openings[0], plan.posterior_picks, game.predicate
    )
