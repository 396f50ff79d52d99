"""Seeded Monte Carlo estimates by playing whole games door by door.

Random stream layout
--------------------
Every trial owns a fixed window of a Philox4x64-10 counter-based stream
keyed by the 64-bit seed: trial ``t`` reads the ``W`` raw 64-bit words
starting at word ``t * W``, where ``W`` is ``(1 + number of phases) * doors``
rounded up to a multiple of 4. Word block ``s`` (``doors`` words) gives one
random key per door for step ``s``: step 0 places the cars, step ``i``
performs phase ``i``. Whoever picks or opens ``k`` doors takes the ``k``
eligible doors with the smallest keys, which is a uniformly random ordered
choice.

Because a trial's randomness depends only on ``(seed, t)``, results are
identical for any worker count or chunking.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .scenario import Open, OutcomePredicate, ValidatedGame

__all__ = [
    "SimulationEstimate",
    "CHUNK_TRIALS",
    "simulate",
    "simulate_policy_comparison",
    "door_car_frequencies",
    "default_workers",
]

CHUNK_TRIALS = 1 << 16
_MASK64 = (1 << 64) - 1
_NEVER = np.uint64(_MASK64)


@dataclass(frozen=True)
class SimulationEstimate:
    trials: int
    successes: int
    seed: int
    worker_count: int

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.trials)

    def z_score(self, exact: float) -> float | None:
        se = self.std_error
        if se == 0:
            return None if self.estimate != exact else 0.0
        return (self.estimate - exact) / se

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "seed": self.seed,
            "worker_count": self.worker_count,
        }


def default_workers() -> int:
    return os.cpu_count() or 1


def _words_per_trial(game: ValidatedGame) -> int:
    w = (1 + len(game.plan.phases)) * game.doors
    return -(-w // 4) * 4


def _raw_block(seed: int, game: ValidatedGame, start: int, stop: int) -> np.ndarray:
    width = _words_per_trial(game)
    bg = np.random.Philox(key=seed)
    if start:
        bg.advance(start * width // 4)
    return bg.random_raw((stop - start) * width).reshape(stop - start, width)


def _smallest(keys: np.ndarray, k: int, ordered: bool) -> np.ndarray:
    if ordered:
        return np.argsort(keys, axis=1)[:, :k]
    return np.argpartition(keys, k - 1, axis=1)[:, :k]


def _play(seed: int, game: ValidatedGame, start: int, stop: int):
    """Run trials ``start..stop``; return (car layout, per-pick car flags)."""
    d = game.doors
    raw = _raw_block(seed, game, start, stop)
    n = stop - start
    base = (np.arange(n) * d)[:, None]

    is_car = np.zeros(n * d, dtype=bool)
    is_car[base + _smallest(raw[:, :d], game.cars, ordered=False)] = True

    closed = np.ones(n * d, dtype=bool)
    flags = np.empty((n, game.plan.total_picks), dtype=bool)
    slot = 0
    for step, phase in enumerate(game.plan.phases, start=1):
        if phase.count == 0:
            continue
        keys = raw[:, step * d : (step + 1) * d]
        if isinstance(phase, Open):
            eligible = (closed & ~is_car).reshape(n, d)
            chosen = base + _smallest(np.where(eligible, keys, _NEVER), phase.count, ordered=False)
        else:
            eligible = closed.reshape(n, d)
            chosen = base + _smallest(np.where(eligible, keys, _NEVER), phase.count, ordered=True)
            flags[:, slot : slot + phase.count] = is_car[chosen]
            slot += phase.count
        closed[chosen] = False
    return is_car.reshape(n, d), flags


def _successes(flags: np.ndarray, game: ValidatedGame, predicate: OutcomePredicate) -> int:
    slots = game.plan.segment_slots(predicate.segment)
    seg = flags[:, slots.start : slots.stop]
    if predicate.kind == "position_is_car":
        hit = seg[:, predicate.k - 1]
    else:
        cars = seg.sum(axis=1)
        if predicate.kind == "at_least":
            hit = cars >= predicate.k
        elif predicate.kind == "exactly":
            hit = cars == predicate.k
        else:
            hit = cars == seg.shape[1]
    return int(np.count_nonzero(hit))


def _chunk_task(args) -> tuple[int, ...]:
    seed, game, predicates, start, stop = args
    _, flags = _play(seed, game, start, stop)
    return tuple(_successes(flags, game, pred) for pred in predicates)


def _run(game, trials, seed, workers, predicates) -> tuple[int, ...]:
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    for pred in predicates:
        pred.check_against(game.plan)
    tasks = [
        (seed, game, predicates, lo, min(lo + CHUNK_TRIALS, trials))
        for lo in range(0, trials, CHUNK_TRIALS)
    ]
    if workers == 1 or len(tasks) == 1:
        parts = [_chunk_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            parts = list(pool.map(_chunk_task, tasks))
    return tuple(sum(col) for col in zip(*parts))


def simulate(game: ValidatedGame, trials: int, seed: int = 0, workers: int = 1) -> SimulationEstimate:
    (hits,) = _run(game, trials, seed, workers, (game.predicate,))
    return SimulationEstimate(trials, hits, seed, workers)


def simulate_policy_comparison(
    game: ValidatedGame, trials: int, seed: int = 0, workers: int = 1
) -> tuple[SimulationEstimate, SimulationEstimate]:
    """Stay and switch estimates from the same simulated games.

    Staying judges the predicate on the first picks only; switching judges
    it as the game defines it. Both read the same car layouts and picks.
    """
    if game.plan.switch_rounds < 1:
        raise ValueError("policy comparison needs at least one open phase")
    stay_pred = game.predicate.on("anterior")
    stay, switch = _run(game, trials, seed, workers, (stay_pred, game.predicate))
    return (
        SimulationEstimate(trials, stay, seed, workers),
        SimulationEstimate(trials, switch, seed, workers),
    )


def door_car_frequencies(game: ValidatedGame, trials: int, seed: int = 0) -> np.ndarray:
    """How often each door hid a car over ``trials`` layouts."""
    counts = np.zeros(game.doors, dtype=np.int64)
    for lo in range(0, trials, CHUNK_TRIALS):
        is_car, _ = _play(seed, game, lo, min(lo + CHUNK_TRIALS, trials))
        counts += is_car.sum(axis=0)
    return counts
