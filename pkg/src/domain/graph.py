"""ResolutionGraph model - a decorated plumbing tree.

Only structure lives here; validation of tree shape and negative
definiteness happens in `src.lattice.core`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx


@dataclass(frozen=True)
class ResolutionGraph:
    """Vertices with Euler numbers (self-intersections) and tree edges.

    Vertex order is the input order and fixes the coordinate order of every
    cycle on this graph.
    """

    vertices: tuple[str, ...]
    euler: tuple[int, ...]
    edges: tuple[tuple[str, str], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.vertices) != len(self.euler):
            raise ValueError("vertices and euler must have the same length")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def size(self) -> int:
        return len(self.vertices)

    def euler_of(self, v: str) -> int:
        return self.euler[self.index[v]]

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor indices per vertex index."""
        nbrs: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            i, j = self.index[a], self.index[b]
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(n) for n in nbrs)

    def degree(self, v: str) -> int:
        return len(self.adjacency[self.index[v]])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(n) for n in self.adjacency)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Intersection matrix M: euler on the diagonal, 1 per edge."""
        n = self.size
        rows = [[0] * n for _ in range(n)]
        for i, e in enumerate(self.euler):
            rows[i][i] = e
        for a, b in self.edges:
            i, j = self.index[a], self.index[b]
            rows[i][j] += 1
            rows[j][i] += 1
        return tuple(tuple(r) for r in rows)

    def induced(self, keep: Iterable[str], name: str = "") -> "ResolutionGraph":
        """Induced subgraph on `keep`, preserving vertex order."""
        keep_set = set(keep)
        vertices = tuple(v for v in self.vertices if v in keep_set)
        return ResolutionGraph(
            vertices=vertices,
            euler=tuple(self.euler_of(v) for v in vertices),
            edges=tuple((a, b) for a, b in self.edges if a in keep_set and b in keep_set),
            name=name,
        )

    def to_text(self) -> str:
        """Serialize in the line-oriented graph file format."""
        lines = [f"# {self.name}"] if self.name else []
        lines += [f"vertex {v} {e}" for v, e in zip(self.vertices, self.euler)]
        lines += [f"edge {a} {b}" for a, b in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        """Graphviz DOT rendering with Euler numbers as labels."""
        lines = [f'graph "{self.name or "plumbing"}" {{']
        for v, e in zip(self.vertices, self.euler):
            lines.append(f'  "{v}" [label="{e}", xlabel="{v}"];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        """Serialize to dictionary for JSON output."""
        return {
            "name": self.name,
            "vertices": [
                {"id": v, "euler": e} for v, e in zip(self.vertices, self.euler)
            ],
            "edges": [[a, b] for a, b in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResolutionGraph":
        """Deserialize from dictionary (no lattice validation)."""
        vertices = data["vertices"]
        return cls(
            vertices=tuple(str(v["id"]) for v in vertices),
            euler=tuple(int(v["euler"]) for v in vertices),
            edges=tuple((str(a), str(b)) for a, b in data.get("edges", [])),
            name=data.get("name", ""),
        )
