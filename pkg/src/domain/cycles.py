"""Cycles on a resolution graph: RatCycle (L' tensor Q) and IntCycle (L).

Coordinates are in the E-basis, ordered like the graph's vertices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from src.utils.rational import RationalLike, fraction_to_str, to_fraction


class RatCycle:
    """Exact rational cycle keyed by vertex id."""

    __slots__ = ("vertices", "coeffs")

    def __init__(self, vertices: Sequence[str], coeffs: Iterable[RationalLike]):
        self.vertices = tuple(vertices)
        self.coeffs = tuple(to_fraction(c) for c in coeffs)
        if len(self.coeffs) != len(self.vertices):
            raise ValueError(
                f"cycle has {len(self.coeffs)} coefficients for {len(self.vertices)} vertices"
            )

    # ------------------------------------------------------------------ build

    @staticmethod
    def make(vertices: Sequence[str], coeffs: Iterable[RationalLike]) -> "RatCycle":
        """IntCycle when every coefficient is integral, RatCycle otherwise."""
        coeffs = [to_fraction(c) for c in coeffs]
        if all(c.denominator == 1 for c in coeffs):
            return IntCycle(vertices, coeffs)
        return RatCycle(vertices, coeffs)

    @classmethod
    def zero(cls, vertices: Sequence[str]) -> "IntCycle":
        return IntCycle(vertices, [0] * len(vertices))

    @classmethod
    def basis(cls, vertices: Sequence[str], v: str) -> "IntCycle":
        return IntCycle(vertices, [1 if w == v else 0 for w in vertices])

    @classmethod
    def from_dict(cls, vertices: Sequence[str], data: Mapping[str, RationalLike]) -> "RatCycle":
        unknown = set(data) - set(vertices)
        if unknown:
            raise ValueError(f"unknown vertices in cycle: {sorted(unknown)}")
        return cls.make(vertices, [data.get(v, 0) for v in vertices])

    def to_dict(self) -> dict[str, str]:
        return {v: fraction_to_str(c) for v, c in zip(self.vertices, self.coeffs)}

    # ------------------------------------------------------------ arithmetic

    def _check(self, other: "RatCycle") -> None:
        if self.vertices != other.vertices:
            raise ValueError("cycles live on different vertex sets")

    def __add__(self, other: "RatCycle") -> "RatCycle":
        self._check(other)
        return RatCycle.make(self.vertices, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "RatCycle") -> "RatCycle":
        self._check(other)
        return RatCycle.make(self.vertices, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "RatCycle":
        return RatCycle.make(self.vertices, [-a for a in self.coeffs])

    def __mul__(self, k: RationalLike) -> "RatCycle":
        k = to_fraction(k)
        return RatCycle.make(self.vertices, [k * a for a in self.coeffs])

    __rmul__ = __mul__

    def __getitem__(self, v: str) -> Fraction:
        return self.coeffs[self.vertices.index(v)]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatCycle):
            return NotImplemented
        return self.vertices == other.vertices and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.vertices, self.coeffs))

    # --------------------------------------------------------------- order

    def __le__(self, other: "RatCycle") -> bool:
        """Coordinatewise partial order."""
        self._check(other)
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __ge__(self, other: "RatCycle") -> bool:
        self._check(other)
        return all(a >= b for a, b in zip(self.coeffs, other.coeffs))

    def meet(self, other: "RatCycle") -> "RatCycle":
        self._check(other)
        return RatCycle.make(self.vertices, [min(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def join(self, other: "RatCycle") -> "RatCycle":
        self._check(other)
        return RatCycle.make(self.vertices, [max(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    # ------------------------------------------------------------ queries

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def support(self) -> tuple[str, ...]:
        return tuple(v for v, c in zip(self.vertices, self.coeffs) if c != 0)

    def to_int(self) -> "IntCycle":
        return IntCycle(self.vertices, self.coeffs)

    def __repr__(self) -> str:
        body = ", ".join(fraction_to_str(c) for c in self.coeffs)
        return f"{type(self).__name__}({body})"


class IntCycle(RatCycle):
    """Element of the lattice L."""

    __slots__ = ()

    def __init__(self, vertices: Sequence[str], coeffs: Iterable[RationalLike]):
        super().__init__(vertices, coeffs)
        if not all(c.denominator == 1 for c in self.coeffs):
            raise ValueError(f"IntCycle needs integer coefficients, got {self.coeffs}")

    @property
    def ints(self) -> tuple[int, ...]:
        return tuple(c.numerator for c in self.coeffs)

    @classmethod
    def from_ints(cls, vertices: Sequence[str], values: Iterable[int]) -> "IntCycle":
        return cls(vertices, list(values))
