"""Local chart data: rational 2-forms and divisor cuts v = c(u)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from src.domain.seifert import WhForm
from src.utils.rational import fraction_to_str


@dataclass(frozen=True)
class RationalForm:
    """u^{-ell-1} N(v) prod_j (v - p_j)^{-m_j} dv ^ du.

    `numerator` lists the coefficients of N from the constant term up.
    """

    ell: int
    numerator: tuple[Any, ...] = (1,)
    poles: tuple[tuple[Any, int], ...] = ()

    @property
    def pole_order(self) -> int:
        return self.ell + 1

    @classmethod
    def from_wh(cls, form: WhForm) -> "RationalForm":
        numerator = (0,) * form.n + (1,)
        poles = tuple((p, m) for p, m in zip(form.points, form.m) if m)
        return cls(ell=form.ell, numerator=numerator, poles=poles)

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "numerator": [str(x) for x in self.numerator],
            "poles": [[str(p), m] for p, m in self.poles],
        }


@dataclass(frozen=True)
class Cut:
    """A transversal cut v = c_0 + c_1 u + ... through a point of the central curve."""

    c: tuple[Any, ...]
    multiplicity: int = 1
    center: tuple[str, str] = ("v0", "U0")

    def __post_init__(self):
        if not self.c:
            raise ValueError("a cut needs at least c_0")
        if self.multiplicity < 1:
            raise ValueError("cut multiplicity must be positive")

    @property
    def jet_order(self) -> int:
        return len(self.c)

    def to_dict(self) -> dict:
        return {
            "c": [fraction_to_str(x) if isinstance(x, (int, Fraction)) else str(x) for x in self.c],
            "multiplicity": self.multiplicity,
            "center": list(self.center),
        }


@dataclass(frozen=True)
class DivisorChart:
    """Effective divisor given by cuts inside one chart family."""

    cuts: tuple[Cut, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.cuts)

    def to_dict(self) -> dict:
        return {"cuts": [cut.to_dict() for cut in self.cuts]}
