"""Game descriptions: doors and cars, the pick/open schedule, and the win test.

A game is only ever handed to a computation route after :func:`validate`
has accepted it. Acceptance guarantees that the host can open the requested
number of goat doors in *every* branch (even if all earlier picks were
goats) and that each pick phase has enough fresh doors to choose from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Union

__all__ = [
    "ValidationError",
    "InvalidScenario",
    "InvalidPlan",
    "InfeasibleOpening",
    "InsufficientDoors",
    "BadPredicate",
    "Scenario",
    "Pick",
    "Open",
    "PhasePlan",
    "OutcomePredicate",
    "ValidatedGame",
    "validate",
    "game_from_dict",
    "game_from_json",
    "SEGMENTS",
    "KINDS",
]


class ValidationError(ValueError):
    """Base class for rejected game descriptions."""


class InvalidScenario(ValidationError):
    pass


class InvalidPlan(ValidationError):
    pass


class InfeasibleOpening(ValidationError):
    pass


class InsufficientDoors(ValidationError):
    pass


class BadPredicate(ValidationError):
    pass


def _int(x: Any, name: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidScenario(f"{name} must be an integer, got {x!r}")
    return x


@dataclass(frozen=True)
class Scenario:
    doors: int
    cars: int

    def __post_init__(self) -> None:
        d = _int(self.doors, "doors")
        c = _int(self.cars, "cars")
        if not 1 <= c < d:
            raise InvalidScenario(
                f"need at least one car and one goat (1 <= cars < doors), got doors={d}, cars={c}"
            )

    @property
    def goats(self) -> int:
        return self.doors - self.cars


@dataclass(frozen=True)
class Pick:
    count: int

    def __post_init__(self) -> None:
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 1:
            raise InvalidPlan(f"a pick phase needs count >= 1, got {self.count!r}")

    def to_dict(self) -> dict:
        return {"pick": self.count}


@dataclass(frozen=True)
class Open:
    count: int

    def __post_init__(self) -> None:
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 0:
            raise InvalidPlan(f"an open phase needs count >= 0, got {self.count!r}")

    def to_dict(self) -> dict:
        return {"open": self.count}


Phase = Union[Pick, Open]


@dataclass(frozen=True)
class PhasePlan:
    """Alternating pick/open schedule, starting and ending with a pick."""

    phases: tuple

    def __post_init__(self) -> None:
        phases = tuple(self.phases)
        object.__setattr__(self, "phases", phases)
        if not phases:
            raise InvalidPlan("empty plan")
        for i, ph in enumerate(phases):
            want = Pick if i % 2 == 0 else Open
            if not isinstance(ph, want):
                raise InvalidPlan(
                    f"phase {i} must be {want.__name__}: plans alternate Pick, Open, Pick, ..."
                )
        if isinstance(phases[-1], Open):
            raise InvalidPlan("a plan must end with a pick phase")

    @classmethod
    def mh3(cls, p: int, o: int, q: int) -> "PhasePlan":
        return cls((Pick(p), Open(o), Pick(q)))

    @classmethod
    def mh4(cls, schedule: Sequence[int]) -> "PhasePlan":
        phases: list = [Pick(1)]
        for o in schedule:
            phases += [Open(o), Pick(1)]
        return cls(tuple(phases))

    @property
    def pick_phases(self) -> tuple[int, ...]:
        return tuple(ph.count for ph in self.phases if isinstance(ph, Pick))

    @property
    def openings(self) -> tuple[int, ...]:
        return tuple(ph.count for ph in self.phases if isinstance(ph, Open))

    @property
    def anterior_picks(self) -> int:
        return self.phases[0].count

    @property
    def posterior_picks(self) -> int:
        return sum(self.pick_phases[1:])

    @property
    def switch_rounds(self) -> int:
        return len(self.openings)

    @property
    def total_picks(self) -> int:
        return sum(self.pick_phases)

    @property
    def total_openings(self) -> int:
        return sum(self.openings)

    def is_three_phase(self) -> bool:
        return len(self.phases) == 3

    def is_single_pick(self) -> bool:
        return all(n == 1 for n in self.pick_phases)

    def segment_slots(self, segment: str) -> range:
        """Pick-slot indices (0-based, over all picks) covered by ``segment``."""
        sizes = self.pick_phases
        if segment == "anterior":
            return range(0, sizes[0])
        if segment == "posterior":
            return range(sizes[0], self.total_picks)
        if segment == "final-round":
            return range(self.total_picks - sizes[-1], self.total_picks)
        if segment == "all":
            return range(0, self.total_picks)
        raise BadPredicate(f"unknown segment {segment!r}")

    def to_list(self) -> list[dict]:
        return [ph.to_dict() for ph in self.phases]

    @classmethod
    def from_list(cls, items: Iterable[dict]) -> "PhasePlan":
        phases: list = []
        for item in items:
            if not isinstance(item, dict) or len(item) != 1:
                raise InvalidPlan(f"bad phase entry {item!r}")
            ((key, n),) = item.items()
            if key == "pick":
                phases.append(Pick(n))
            elif key == "open":
                phases.append(Open(n))
            else:
                raise InvalidPlan(f"bad phase kind {key!r}")
        return cls(tuple(phases))

    def __str__(self) -> str:
        return ",".join(
            f"{'p' if isinstance(ph, Pick) else 'o'}{ph.count}" for ph in self.phases
        )


SEGMENTS = ("anterior", "posterior", "final-round", "all")
KINDS = ("at_least", "exactly", "all_cars", "position_is_car")


@dataclass(frozen=True)
class OutcomePredicate:
    """Success test over the car/goat outcomes of one segment of picks.

    ``k`` is a car count for ``at_least``/``exactly`` and a 1-based pick
    position within the segment for ``position_is_car``.
    """

    segment: str = "posterior"
    kind: str = "at_least"
    k: int | None = 1

    def __post_init__(self) -> None:
        if self.segment not in SEGMENTS:
            raise BadPredicate(f"segment must be one of {SEGMENTS}, got {self.segment!r}")
        if self.kind not in KINDS:
            raise BadPredicate(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind == "all_cars":
            object.__setattr__(self, "k", None)
        elif isinstance(self.k, bool) or not isinstance(self.k, int):
            raise BadPredicate(f"predicate kind {self.kind!r} needs an integer k")

    @property
    def count_based(self) -> bool:
        return self.kind != "position_is_car"

    def on(self, segment: str) -> "OutcomePredicate":
        return OutcomePredicate(segment, self.kind, self.k)

    def check_against(self, plan: PhasePlan) -> None:
        n = len(plan.segment_slots(self.segment))
        if n == 0:
            raise BadPredicate(f"segment {self.segment!r} has no picks in plan {plan}")
        if self.kind in ("at_least", "exactly") and not 0 <= self.k <= n:
            raise BadPredicate(f"k={self.k} outside 0..{n} for segment {self.segment!r}")
        if self.kind == "position_is_car" and not 1 <= self.k <= n:
            raise BadPredicate(f"position {self.k} outside 1..{n} for segment {self.segment!r}")

    def accepts_count(self, cars: int, n: int) -> bool:
        """Decide a count-based predicate from the segment's car count."""
        if self.kind == "at_least":
            return cars >= self.k
        if self.kind == "exactly":
            return cars == self.k
        if self.kind == "all_cars":
            return cars == n
        raise BadPredicate("positional predicates cannot be decided from counts")

    def holds(self, cars: Sequence[bool], plan: PhasePlan) -> bool:
        seg = [cars[i] for i in plan.segment_slots(self.segment)]
        if self.kind == "position_is_car":
            return bool(seg[self.k - 1])
        return self.accepts_count(sum(seg), len(seg))

    def to_dict(self) -> dict:
        out = {"segment": self.segment, "kind": self.kind}
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "OutcomePredicate":
        if not isinstance(data, dict):
            raise BadPredicate(f"predicate must be an object, got {data!r}")
        kind = data.get("kind", "at_least")
        default_k = 1 if kind in ("at_least", "position_is_car") else None
        return cls(data.get("segment", "posterior"), kind, data.get("k", default_k))

    def __str__(self) -> str:
        tail = "" if self.k is None else f"({self.k})"
        return f"{self.kind}{tail} on {self.segment}"


@dataclass(frozen=True)
class ValidatedGame:
    scenario: Scenario
    plan: PhasePlan
    predicate: OutcomePredicate

    @property
    def doors(self) -> int:
        return self.scenario.doors

    @property
    def cars(self) -> int:
        return self.scenario.cars

    @property
    def goats(self) -> int:
        return self.scenario.goats

    def with_predicate(self, predicate: OutcomePredicate) -> "ValidatedGame":
        return validate(self.scenario, self.plan, predicate)

    def to_dict(self) -> dict:
        return {
            "doors": self.doors,
            "cars": self.cars,
            "plan": self.plan.to_list(),
            "predicate": self.predicate.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def validate(scenario: Scenario, plan: PhasePlan, predicate: OutcomePredicate) -> ValidatedGame:
    """Accept or reject a game.

    Openings are checked against the worst case, where every earlier pick
    was a goat, so the host can act in every branch.
    """
    g = scenario.goats
    picked = opened = 0
    for ph in plan.phases:
        if isinstance(ph, Pick):
            fresh = scenario.doors - picked - opened
            if ph.count > fresh:
                raise InsufficientDoors(
                    f"pick of {ph.count} with only {fresh} never-picked, never-opened doors"
                )
            picked += ph.count
        else:
            if opened + ph.count > g - picked:
                raise InfeasibleOpening(
                    f"host may need {opened + ph.count} goat doors but only "
                    f"{g - picked} are guaranteed after {picked} picks"
                )
            opened += ph.count
    predicate.check_against(plan)
    return ValidatedGame(scenario, plan, predicate)


def game_from_dict(data: dict) -> ValidatedGame:
    """Build a game from the scenario file format.

    ``{"doors": 12, "cars": 5, "plan": [{"pick": 3}, {"open": 2}, {"pick": 2}],
    "predicate": {"segment": "posterior", "kind": "at_least", "k": 1}}``
    """
    if not isinstance(data, dict):
        raise InvalidScenario("scenario must be a JSON object")
    missing = [key for key in ("doors", "cars", "plan") if key not in data]
    if missing:
        raise InvalidScenario(f"scenario missing fields: {', '.join(missing)}")
    scenario = Scenario(data["doors"], data["cars"])
    plan = PhasePlan.from_list(data["plan"])
    predicate = OutcomePredicate.from_dict(data.get("predicate", {}))
    return validate(scenario, plan, predicate)


def game_from_json(text: str) -> ValidatedGame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidScenario(f"bad JSON: {exc}") from None
    return game_from_dict(data)
