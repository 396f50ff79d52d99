"""Exact rational values.

Probabilities are :class:`fractions.Fraction` instances, which are always
kept in lowest terms with a positive denominator and are immutable. The
helpers here add the two things the stdlib type lacks for this package: a
stable ``"num/den"`` string form and correctly rounded decimal rendering.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "add",
    "mul",
    "total",
    "product",
    "as_rational",
    "to_string",
    "parse",
    "to_decimal",
]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def add(a: RationalLike, b: RationalLike) -> Fraction:
    return as_rational(a) + as_rational(b)


def mul(a: RationalLike, b: RationalLike) -> Fraction:
    return as_rational(a) * as_rational(b)


def total(values: Iterable[RationalLike]) -> Fraction:
    return sum((as_rational(v) for v in values), Fraction(0))


def product(values: Iterable[RationalLike]) -> Fraction:
    return reduce(mul, values, Fraction(1))


def to_string(a: RationalLike) -> str:
    """Reduced ``"num/den"`` form; integers keep an explicit ``/1``."""
    a = as_rational(a)
    return f"{a.numerator}/{a.denominator}"


def parse(text: str) -> Fraction:
    """Inverse of :func:`to_string`. Bare integers are accepted too.

    Floats and decimal strings are rejected so nothing inexact sneaks in.
    """
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact fraction: {text!r}") from None
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def to_decimal(a: RationalLike, digits: int) -> str:
    """Render ``a`` with exactly ``digits`` fractional digits.

    Rounding is half away from zero, done in integer arithmetic.

    >>> to_decimal(Fraction(2, 3), 4)
    '0.6667'
    >>> to_decimal(Fraction(-1, 8), 2)
    '-0.13'
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    a = as_rational(a)
    scale = 10**digits
    q, r = divmod(abs(a.numerator) * scale, a.denominator)
    if 2 * r >= a.denominator:
        q += 1
    whole, frac = divmod(q, scale)
    sign = "-" if a < 0 and q != 0 else ""
    return f"{sign}{whole}.{frac:0{digits}d}"
