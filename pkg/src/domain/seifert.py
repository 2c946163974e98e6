"""Seifert invariants of star-shaped graphs and the weighted-homogeneous summary."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from src.errors import BadRange, NotCoprime


@dataclass(frozen=True)
class SeifertData:
    """(b0; (alpha_1, omega_1), ..., (alpha_nu, omega_nu)).

    The central vertex has Euler number -b0; leg j is the negative continued
    fraction of alpha_j / omega_j. Legs with alpha = 1 are not allowed.
    """

    b0: int
    legs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for alpha, omega in self.legs:
            if not 0 < omega < alpha:
                raise BadRange(f"leg ({alpha}, {omega}) needs 0 < omega < alpha")
            if math.gcd(alpha, omega) != 1:
                raise NotCoprime(f"leg ({alpha}, {omega}) is not coprime")

    @property
    def nu(self) -> int:
        return len(self.legs)

    @property
    def orbifold_euler(self) -> Fraction:
        """e = -b0 + sum omega_j / alpha_j."""
        return -self.b0 + sum((Fraction(w, a) for a, w in self.legs), Fraction(0))

    @property
    def order(self) -> int:
        """|H| = alpha_1 ... alpha_nu * |e|."""
        return int(abs(self.orbifold_euler) * math.prod(a for a, _ in self.legs))

    def to_text(self) -> str:
        legs = ";".join(f"{a},{w}" for a, w in self.legs)
        return f"b0={self.b0} legs={legs}"

    def to_dict(self) -> dict:
        return {"b0": self.b0, "legs": [list(leg) for leg in self.legs]}

    @classmethod
    def from_dict(cls, data: dict) -> "SeifertData":
        return cls(
            b0=int(data["b0"]),
            legs=tuple((int(a), int(w)) for a, w in data.get("legs", [])),
        )


_LEG_RE = re.compile(r"^(\d+),(\d+)(?:x(\d+))?$")


def parse_seifert(text: str) -> SeifertData:
    """Parse `b0=4 legs=8,1x8` (legs separated by ';' or ' ') or a JSON object.

    Raises:
        ValueError: unparsable text
        BadRange, NotCoprime: invalid legs
    """
    text = text.strip()
    if text.startswith("{"):
        return SeifertData.from_dict(json.loads(text))

    match = re.match(r"^b0\s*=\s*(-?\d+)\s*(?:legs\s*=\s*(.*))?$", text)
    if not match:
        raise ValueError(f"Cannot parse Seifert data: {text!r}")
    b0 = int(match.group(1))
    legs: list[tuple[int, int]] = []
    for token in re.split(r"[;\s]+", (match.group(2) or "").strip()):
        if not token:
            continue
        leg = _LEG_RE.match(token)
        if not leg:
            raise ValueError(f"Cannot parse leg {token!r}")
        count = int(leg.group(3) or 1)
        legs.extend([(int(leg.group(1)), int(leg.group(2)))] * count)
    return SeifertData(b0=b0, legs=tuple(legs))


@dataclass(frozen=True)
class WhInvariants:
    """n_l for 0 <= l <= ell_max, the pole set W and p_g.

    omega_prime[j] * omega_j - 1 = alpha_j * tau[j] with 0 < omega_prime[j] < alpha_j.
    """

    n: tuple[int, ...]
    ell_max: int
    W: tuple[int, ...] = ()
    pg: int = 0
    omega_prime: tuple[int, ...] = ()
    tau: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "ell_max": self.ell_max,
            "n": {str(ell): self.n[ell] for ell in self.W},
            "W": list(self.W),
            "pg": self.pg,
            "omega_prime": list(self.omega_prime),
            "tau": list(self.tau),
        }


@dataclass(frozen=True)
class WhForm:
    """u^{-l-1} prod_j (v - p_j)^{-m_j} v^n dv ^ du on the central chart."""

    ell: int
    n: int
    m: tuple[int, ...]
    points: tuple[Fraction, ...] = field(default=(), compare=False)

    @property
    def pole_order(self) -> int:
        return self.ell + 1

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "n": self.n,
            "m": list(self.m),
            "pole_order": self.pole_order,
            "points": [str(p) for p in self.points],
        }
