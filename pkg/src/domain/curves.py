"""Rational cuspidal plane curve models and superisolated point configurations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from src.config import get_curve_model_name
from src.errors import BadRange
from src.utils.rational import fraction_to_str

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CurveModel:
    """Affine chart z = 1 of a degree-d rational cuspidal curve G(u, v) = 0.

    cusp:    v^(d-1) - u^d                 t -> (t^(d-1), t^d)
    sheared: v^(d-1) (1 - v) - u^d         t -> (t^(d-1), t^d) / (1 + t^d)
    """

    name: str
    d: int

    def __post_init__(self):
        get_curve_model_name(self.name)
        if self.d < 3:
            raise BadRange(f"curve degree must be >= 3, got {self.d}")

    @cached_property
    def equation(self) -> dict[tuple[int, int], int]:
        """Monomial (a, b) of u^a v^b -> integer coefficient."""
        d = self.d
        terms = {(0, d - 1): 1, (d, 0): -1}
        if self.name == "sheared":
            terms[(0, d)] = -1
        return terms

    def evaluate(self, point: Point) -> Fraction:
        u, v = point
        return sum((c * u**a * v**b for (a, b), c in self.equation.items()), Fraction(0))

    def gradient(self, point: Point) -> Point:
        u, v = point
        du = dv = Fraction(0)
        for (a, b), c in self.equation.items():
            if a:
                du += c * a * u ** (a - 1) * v**b
            if b:
                dv += c * b * u**a * v ** (b - 1)
        return du, dv

    def point(self, t) -> Point:
        t = Fraction(t)
        u, v = t ** (self.d - 1), t**self.d
        if self.name == "sheared":
            if 1 + v == 0:
                raise BadRange(f"t = {t} is the point at infinity of the sheared model")
            return u / (1 + v), v / (1 + v)
        return u, v

    def points(self, ts: Sequence) -> list[Point]:
        return [self.point(t) for t in ts]


@dataclass(frozen=True)
class SiInstance:
    """k points on the degree-d curve, one transversal cut through each."""

    model: CurveModel
    points: tuple[Point, ...] = field(default=())

    def __post_init__(self):
        points = tuple((Fraction(u), Fraction(v)) for u, v in self.points)
        object.__setattr__(self, "points", points)
        if len(set(points)) != len(points):
            raise BadRange("points must be pairwise distinct")
        for p in points:
            if self.model.evaluate(p) != 0:
                raise BadRange(f"point {p} is not on the {self.model.name} curve")
            if self.model.gradient(p) == (0, 0):
                raise BadRange(f"point {p} is a singular point of the curve")

    @property
    def d(self) -> int:
        return self.model.d

    @property
    def k(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "model": self.model.name,
            "d": self.d,
            "points": [[fraction_to_str(u), fraction_to_str(v)] for u, v in self.points],
        }
