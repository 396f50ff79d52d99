"""Exhaustive car/goat sequence enumeration: the exact ground truth.

Every pick is either a car or a goat, so a plan with ``n`` picks has
``2**n`` sequences. Each sequence is weighted by its availability chain:

* a car pick contributes ``cars_left / doors_left``,
* a goat pick contributes ``goats_left / doors_left``,
* an ``Open(k)`` phase removes ``k`` goats and ``k`` doors.

The door counts do not depend on what was picked, so every sequence shares
one denominator; weights are summed as integers over it before a single
reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterator, Sequence

from .scenario import Open, OutcomePredicate, PhasePlan, ValidatedGame

__all__ = [
    "DEFAULT_BOUND",
    "BoundExceeded",
    "PickSequence",
    "WeightedSequence",
    "enumerate_sequences",
    "iter_sequences",
    "common_denominator",
    "outcome_probability",
    "probability_where",
    "marginal_check",
]

DEFAULT_BOUND = 24


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class PickSequence:
    """Car (True) / goat (False) outcome of every pick, with phase sizes."""

    slots: tuple[bool, ...]
    phase_sizes: tuple[int, ...]

    def __str__(self) -> str:
        out, i = [], 0
        for n in self.phase_sizes:
            out.append("".join("c" if s else "g" for s in self.slots[i : i + n]))
            i += n
        return "|".join(out)

    @classmethod
    def parse(cls, text: str) -> "PickSequence":
        parts = text.split("|")
        slots = tuple(ch == "c" for part in parts for ch in part)
        if any(ch not in "cg" for part in parts for ch in part):
            raise ValueError(f"bad sequence {text!r}")
        return cls(slots, tuple(len(p) for p in parts))

    def cars_in(self, slots: range) -> int:
        return sum(self.slots[i] for i in slots)


@dataclass(frozen=True)
class WeightedSequence:
    sequence: PickSequence
    probability: Fraction
    numerator_trace: tuple[int, ...]
    denominator_trace: tuple[int, ...]

    @property
    def numerator(self) -> int:
        """Unreduced numerator over the common denominator (0 if any factor <= 0)."""
        if any(f <= 0 for f in self.numerator_trace):
            return 0
        return prod(self.numerator_trace)

    def to_dict(self) -> dict:
        return {
            "sequence": str(self.sequence),
            "numerator": list(self.numerator_trace),
            "denominator": list(self.denominator_trace),
            "probability": f"{self.probability.numerator}/{self.probability.denominator}",
        }


def _check_bound(plan: PhasePlan, bound: int) -> None:
    if plan.total_picks > bound:
        raise BoundExceeded(
            f"{plan.total_picks} picks means 2**{plan.total_picks} sequences; bound is {bound}"
        )


def common_denominator(game: ValidatedGame) -> tuple[int, ...]:
    """Doors available at each pick; identical for every sequence."""
    doors = game.doors
    trace = []
    for ph in game.plan.phases:
        if isinstance(ph, Open):
            doors -= ph.count
            continue
        for _ in range(ph.count):
            trace.append(doors)
            doors -= 1
    return tuple(trace)


def _numerator_trace(game: ValidatedGame, slots: Sequence[bool]) -> tuple[int, ...]:
    cars, goats = game.cars, game.goats
    trace = []
    it = iter(slots)
    for ph in game.plan.phases:
        if isinstance(ph, Open):
            goats -= ph.count
            continue
        for _ in range(ph.count):
            if next(it):
                trace.append(cars)
                cars -= 1
            else:
                trace.append(goats)
                goats -= 1
    return tuple(trace)


def _slots_for(index: int, n: int) -> tuple[bool, ...]:
    # binary counter, most significant bit first; bit 0 means car
    return tuple(not (index >> (n - 1 - j)) & 1 for j in range(n))


def iter_sequences(game: ValidatedGame, bound: int = DEFAULT_BOUND) -> Iterator[WeightedSequence]:
    """Yield all ``2**picks`` weighted sequences in binary-counter order, cars first."""
    plan = game.plan
    _check_bound(plan, bound)
    n = plan.total_picks
    sizes = plan.pick_phases
    den_trace = common_denominator(game)
    den = prod(den_trace)
    for index in range(2**n):
        slots = _slots_for(index, n)
        num_trace = _numerator_trace(game, slots)
        num = 0 if any(f <= 0 for f in num_trace) else prod(num_trace)
        yield WeightedSequence(PickSequence(slots, sizes), Fraction(num, den), num_trace, den_trace)


def enumerate_sequences(game: ValidatedGame, bound: int = DEFAULT_BOUND) -> list[WeightedSequence]:
    return list(iter_sequences(game, bound))


def probability_where(
    sequences: Sequence[WeightedSequence], plan: PhasePlan, predicate: OutcomePredicate
) -> Fraction:
    """Exact mass of the sequences on which ``predicate`` holds."""
    if not sequences:
        return Fraction(0)
    den = prod(sequences[0].denominator_trace)
    num = sum(w.numerator for w in sequences if predicate.holds(w.sequence.slots, plan))
    return Fraction(num, den)


def outcome_probability(game: ValidatedGame, bound: int = DEFAULT_BOUND) -> Fraction:
    return probability_where(enumerate_sequences(game, bound), game.plan, game.predicate)


def marginal_check(game: ValidatedGame, segment: str, bound: int = DEFAULT_BOUND) -> Fraction:
    """Probability of the game's predicate moved onto ``segment``, by truncation.

    For the anterior segment only the first pick phase is enumerated (its
    own shorter availability chain). For other segments full sequences are
    collapsed onto their segment outcomes before the predicate is applied.
    Either way the result must equal the full-sequence probability of the
    same predicate.
    """
    plan = game.plan
    predicate = game.predicate.on(segment)
    predicate.check_against(plan)
    _check_bound(plan, bound)
    slots = plan.segment_slots(segment)

    if segment == "anterior":
        p = plan.anterior_picks
        prefix_plan = PhasePlan(plan.phases[:1])
        prefix_game = ValidatedGame(game.scenario, prefix_plan, predicate.on("all"))
        seqs = enumerate_sequences(prefix_game, bound)
        assert all(len(w.sequence.slots) == p for w in seqs)
        return probability_where(seqs, prefix_plan, predicate.on("all"))

    marginal: dict[tuple[bool, ...], Fraction] = {}
    for w in iter_sequences(game, bound):
        key = tuple(w.sequence.slots[i] for i in slots)
        marginal[key] = marginal.get(key, Fraction(0)) + w.probability
    n = len(slots)
    seg_plan = PhasePlan.from_list([{"pick": n}])
    seg_pred = predicate.on("all")
    return sum(
        (mass for key, mass in marginal.items() if seg_pred.holds(key, seg_plan)), Fraction(0)
    )
