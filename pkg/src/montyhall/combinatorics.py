"""Factorials, falling factorials and binomial coefficients on exact integers."""

from __future__ import annotations

import math

__all__ = ["factorial", "falling_factorial", "binomial", "pascal_row"]


def _count(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return n


def factorial(n: int) -> int:
    return math.factorial(_count(n))


def falling_factorial(n: int, k: int) -> int:
    """n * (n-1) * ... * (n-k+1).

    Total on counts: asking for more factors than ``n`` has (``k > n``)
    yields 0 rather than an error, so an impossible pick chain simply
    contributes nothing.
    """
    return math.perm(_count(n), _count(k, "k"))


def binomial(n: int, k: int) -> int:
    return math.comb(_count(n), _count(k, "k"))


def pascal_row(n: int) -> list[int]:
    """Coefficients of (a + b)**n, built with the multiplicative recurrence."""
    n = _count(n)
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row
