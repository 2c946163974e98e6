"""Exact rational helpers shared by the whole package.

Rationals travel as `fractions.Fraction` inside the library, as sympy `QQ`
elements inside `DomainMatrix`, and as "p/q" strings in JSON.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.config import RANDOM_RATIONAL

RationalLike = Union[int, Fraction, str]


def to_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions, "p/q" strings and sympy rationals to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        num, den = value.numerator, value.denominator
        if callable(num):
            num, den = num(), den()
        return Fraction(int(num), int(den))
    raise TypeError(f"Cannot convert {value!r} to an exact rational")


def fraction_to_str(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def qq(value: RationalLike):
    """Fraction-like value to a sympy QQ element."""
    f = to_fraction(value)
    return QQ(f.numerator, f.denominator)


def qq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def to_sympy(value: RationalLike) -> Rational:
    f = to_fraction(value)
    return Rational(f.numerator, f.denominator)


def qq_matrix(rows: Sequence[Sequence[RationalLike]]) -> DomainMatrix:
    """Build a DomainMatrix over QQ from nested rationals."""
    return DomainMatrix([[qq(x) for x in row] for row in rows], (len(rows), len(rows[0]) if rows else 0), QQ)


def matrix_rank(rows: Sequence[Sequence], domain=None) -> int:
    """Exact rank of a matrix over QQ (default) or any sympy field domain.

    Rows are converted element-wise with `domain.convert`, so field elements
    already living in `domain` pass through unchanged.
    """
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if domain is None:
        return qq_matrix(rows).rank()
    elements = [[domain.convert(x) for x in row] for row in rows]
    return DomainMatrix(elements, (len(rows), len(rows[0])), domain).rank()


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for integers, b > 0."""
    return -((-a) // b)


def ceil_fraction(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def floor_fraction(value: Fraction) -> int:
    return value.numerator // value.denominator


def is_integral(values: Iterable[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def to_domain(value, domain):
    """Convert ints, Fractions, strings or elements of `domain` into `domain`."""
    if isinstance(value, (Fraction, str)):
        return domain.convert(to_sympy(value))
    return domain.convert(value)


def from_domain(value, domain):
    """Fraction for QQ elements, the sympy expression otherwise."""
    if domain == QQ:
        return qq_to_fraction(value)
    return domain.to_sympy(value)


def random_rational(rng, avoid: Iterable[Fraction] = (), nonzero: bool = True) -> Fraction:
    """Small random rational from `RANDOM_RATIONAL`, redrawn until it avoids `avoid`."""
    avoid = set(avoid)
    span = RANDOM_RATIONAL["numerator_range"]
    while True:
        value = Fraction(
            rng.randint(-span, span), rng.randint(1, RANDOM_RATIONAL["denominator_range"])
        )
        if nonzero and value == 0:
            continue
        if value not in avoid:
            return value
