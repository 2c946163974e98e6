"""Result records returned by the lattice algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from src.domain.cycles import IntCycle, RatCycle
from src.utils.rational import fraction_to_str


@dataclass(frozen=True)
class MinimizationResult:
    """Minimum of chi(-l' + l) over a box or the positive orthant."""

    min_value: Fraction
    minimal_minimizer: IntCycle
    minimizer_count: int
    search_bound: IntCycle
    search_lower: IntCycle | None = None
    strategy: str = "pruned"

    def to_dict(self) -> dict:
        """Serialize to dictionary for JSON output."""
        data = {
            "value": fraction_to_str(self.min_value),
            "minimizer": self.minimal_minimizer.to_dict(),
            "count": self.minimizer_count,
            "bound": self.search_bound.to_dict(),
            "strategy": self.strategy,
        }
        if self.search_lower is not None:
            data["bound_lower"] = self.search_lower.to_dict()
        return data


@dataclass(frozen=True)
class LauferStep:
    vertex: str
    chi: Fraction

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "chi": fraction_to_str(self.chi)}


class LauferReduction(NamedTuple):
    """Output of a generalized Laufer sequence started at x."""

    s_x: RatCycle
    l: IntCycle
    trace: list[LauferStep]

    @property
    def chi_change(self) -> Fraction:
        """chi(x + l) - chi(x); never positive."""
        if not self.trace:
            return Fraction(0)
        return self.trace[-1].chi - self.trace[0].chi

    def to_dict(self) -> dict:
        return {
            "s_x": self.s_x.to_dict(),
            "l": self.l.to_dict(),
            "chi_change": fraction_to_str(self.chi_change),
            "trace": [step.to_dict() for step in self.trace],
        }


@dataclass(frozen=True)
class H1Bounds:
    """Interval for h^1(Z, L) over bundles with a fixed Chern class."""

    lower: int
    upper: int
    h1_OZ: int
    h1_OZ_supplied: bool = True
    no_sections_bound: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        data = {
            "lower": self.lower,
            "upper": self.upper,
            "h1_OZ": self.h1_OZ,
            "h1_OZ_supplied": self.h1_OZ_supplied,
        }
        if self.no_sections_bound is not None:
            data["no_sections_bound"] = self.no_sections_bound
        if self.notes:
            data["notes"] = list(self.notes)
        return data
