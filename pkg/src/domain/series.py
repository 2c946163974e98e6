"""ExpSeries model - truncated multivariable series in the E*-exponent basis."""

from __future__ import annotations

from dataclasses import dataclass, field

from src.domain.graph import ResolutionGraph


@dataclass(frozen=True)
class ExpSeries:
    """Terms a -> coefficient, where a = (a_v) stands for l' = sum a_v E*_v.

    Every stored exponent satisfies a_v <= bound[v].
    """

    graph: ResolutionGraph = field(compare=False)
    terms: dict[tuple[int, ...], int]
    bound: tuple[int, ...]

    def __post_init__(self):
        for a in self.terms:
            if any(x > b for x, b in zip(a, self.bound)):
                raise ValueError(f"exponent {a} exceeds bound {self.bound}")

    def __len__(self) -> int:
        return len(self.terms)

    def to_dict(self) -> dict:
        """Serialize to dictionary for JSON output."""
        vertices = self.graph.vertices
        return {
            "bound": dict(zip(vertices, self.bound)),
            "terms": [
                {"exponent": dict(zip(vertices, a)), "coefficient": c}
                for a, c in sorted(self.terms.items())
            ],
        }
