"""Graph-core: parsing, validation, intersection form, dual base, Z_K and chi.

All arithmetic is exact. Per-graph results (inverse matrix, Z_K) are cached on
the graph value, which is an immutable, hashable dataclass.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import networkx as nx
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from src.domain.cycles import IntCycle, RatCycle
from src.domain.graph import ResolutionGraph
from src.errors import (
    DuplicateVertex,
    GenusNonzero,
    GraphSyntaxError,
    NotATree,
    NotInDualLattice,
    NotNegativeDefinite,
    UnknownVertex,
)
from src.utils.logger import get_logger
from src.utils.rational import floor_fraction, qq_matrix, qq_to_fraction

logger = get_logger("plumbline.lattice")


# =============================================================================
# PARSING AND VALIDATION
# =============================================================================


def parse_graph(text: str, name: str = "") -> ResolutionGraph:
    """Parse the line-oriented graph format and validate the result.

    Lines are ``vertex <id> <euler> [genus]``, ``edge <a> <b>`` and
    ``genus <id> <g>``; ``#`` starts a comment.

    Raises:
        GraphSyntaxError, DuplicateVertex, UnknownVertex, GenusNonzero,
        NotATree, NotNegativeDefinite
    """
    vertices: list[str] = []
    euler: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    pending_edges: list[tuple[int, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0].lower()
        try:
            if kind == "vertex" and len(tokens) in (3, 4):
                vid = tokens[1]
                if vid in euler:
                    raise DuplicateVertex(f"line {lineno}: vertex '{vid}' declared twice")
                euler[vid] = int(tokens[2])
                vertices.append(vid)
                if len(tokens) == 4 and int(tokens[3]) != 0:
                    raise GenusNonzero(f"line {lineno}: vertex '{vid}' has genus {tokens[3]}")
            elif kind == "edge" and len(tokens) == 3:
                pending_edges.append((lineno, tokens[1], tokens[2]))
            elif kind == "genus" and len(tokens) == 3:
                if int(tokens[2]) != 0:
                    raise GenusNonzero(f"line {lineno}: vertex '{tokens[1]}' has genus {tokens[2]}")
            else:
                raise GraphSyntaxError(f"line {lineno}: cannot parse '{line}'")
        except ValueError as e:
            raise GraphSyntaxError(f"line {lineno}: expected an integer in '{line}'") from e

    for lineno, a, b in pending_edges:
        for vid in (a, b):
            if vid not in euler:
                raise UnknownVertex(f"line {lineno}: edge mentions unknown vertex '{vid}'")
        edges.append((a, b))

    graph = ResolutionGraph(
        vertices=tuple(vertices),
        euler=tuple(euler[v] for v in vertices),
        edges=tuple(edges),
        name=name,
    )
    validate_graph(graph)
    return graph


def validate_graph(g: ResolutionGraph) -> ResolutionGraph:
    """Check the tree and negative-definiteness invariants, raising on failure."""
    if g.size == 0:
        raise GraphSyntaxError("graph has no vertices")
    if len(set(g.vertices)) != g.size:
        raise DuplicateVertex("duplicate vertex ids")
    for a, b in g.edges:
        if a not in g.index or b not in g.index:
            raise UnknownVertex(f"edge ({a}, {b}) mentions an unknown vertex")
    if len(g.edges) != g.size - 1 or not nx.is_tree(g.nx_graph):
        raise NotATree(
            f"{len(g.edges)} edges on {g.size} vertices do not form a tree"
        )
    check_negative_definite(g)
    return g


def leading_minors(g: ResolutionGraph) -> list[int]:
    """Leading principal minors det((-M)_k) for k = 1..n."""
    neg = [[-x for x in row] for row in g.matrix]
    minors = []
    for k in range(1, g.size + 1):
        block = DomainMatrix([[ZZ(x) for x in row[:k]] for row in neg[:k]], (k, k), ZZ)
        minors.append(int(block.det()))
    return minors


def check_negative_definite(g: ResolutionGraph) -> None:
    """Sylvester's criterion on -M: every leading principal minor is positive."""
    for k, minor in enumerate(leading_minors(g), start=1):
        if minor <= 0:
            raise NotNegativeDefinite(
                f"leading minor {k} of -M is {minor}; intersection form is not negative definite"
            )


def restrict(g: ResolutionGraph, support: Sequence[str]) -> ResolutionGraph:
    """Induced graph on a vertex subset (negative definite again when connected)."""
    return g.induced(support, name=f"{g.name}|{len(support)}" if g.name else "")


# =============================================================================
# INTERSECTION FORM
# =============================================================================


def _vec(g: ResolutionGraph, x: RatCycle | Sequence) -> tuple:
    if isinstance(x, RatCycle):
        if x.vertices != g.vertices:
            raise ValueError("cycle does not live on this graph")
        return x.coeffs
    return tuple(x)


def form_values(g: ResolutionGraph, x: RatCycle | Sequence) -> tuple[Fraction, ...]:
    """(x, E_v) for every vertex, i.e. M x."""
    xs = _vec(g, x)
    return tuple(
        Fraction(g.euler[i]) * xs[i] + sum((xs[j] for j in g.adjacency[i]), Fraction(0))
        for i in range(g.size)
    )


def pairing(g: ResolutionGraph, x: RatCycle | Sequence, y: RatCycle | Sequence) -> Fraction:
    """x^T M y, exact."""
    ys = _vec(g, y)
    return sum((a * b for a, b in zip(form_values(g, x), ys)), Fraction(0))


@lru_cache(maxsize=256)
def neg_inverse(g: ResolutionGraph) -> tuple[tuple[Fraction, ...], ...]:
    """-M^{-1} as exact rationals; entry (u, v) is the u-coordinate of E*_v."""
    inv = qq_matrix(g.matrix).inv().to_list()
    n = g.size
    return tuple(
        tuple(-qq_to_fraction(inv[i][j]) for j in range(n)) for i in range(n)
    )


def dual_cycle(g: ResolutionGraph, v: str) -> RatCycle:
    j = g.index[v]
    return RatCycle.make(g.vertices, [row[j] for row in neg_inverse(g)])


def dual_base(g: ResolutionGraph) -> list[RatCycle]:
    """E*_v for every vertex, in vertex order."""
    return [dual_cycle(g, v) for v in g.vertices]


def basis_cycle(g: ResolutionGraph, v: str) -> IntCycle:
    return RatCycle.basis(g.vertices, v)


def reduced_cycle(g: ResolutionGraph) -> IntCycle:
    """E = sum of all E_v."""
    return IntCycle(g.vertices, [1] * g.size)


def zero_cycle(g: ResolutionGraph) -> IntCycle:
    return RatCycle.zero(g.vertices)


@lru_cache(maxsize=256)
def discriminant(g: ResolutionGraph) -> int:
    """det(-M) = |H|."""
    return leading_minors(g)[-1]


@lru_cache(maxsize=256)
def canonical_cycle(g: ResolutionGraph) -> RatCycle:
    """Z_K with (Z_K, E_v) = E_v^2 + 2 for all v."""
    rhs = [e + 2 for e in g.euler]
    ninv = neg_inverse(g)
    # M Z = rhs  =>  Z = -(-M^{-1}) rhs
    coeffs = [-sum((ninv[i][j] * rhs[j] for j in range(g.size)), Fraction(0)) for i in range(g.size)]
    return RatCycle.make(g.vertices, coeffs)


def chi(g: ResolutionGraph, x: RatCycle | Sequence) -> Fraction:
    """Riemann-Roch expression chi(x) = -(x, x - Z_K)/2."""
    xs = _vec(g, x)
    zk = canonical_cycle(g).coeffs
    return -pairing(g, xs, tuple(a - b for a, b in zip(xs, zk))) / 2


# =============================================================================
# DUAL LATTICE AND LIPMAN CONE
# =============================================================================


def in_dual_lattice(g: ResolutionGraph, x: RatCycle) -> bool:
    return all(val.denominator == 1 for val in form_values(g, x))


def require_dual(g: ResolutionGraph, x: RatCycle) -> None:
    if not in_dual_lattice(g, x):
        raise NotInDualLattice(f"{x!r} pairs non-integrally with some E_v")


def class_rep(g: ResolutionGraph, x: RatCycle) -> RatCycle:
    """r_h: the representative of [x] in the semi-open unit cube."""
    require_dual(g, x)
    return RatCycle.make(g.vertices, [c - floor_fraction(c) for c in x.coeffs])


def in_lipman_cone(g: ResolutionGraph, x: RatCycle | Sequence) -> bool:
    """x in S': (x, E_v) <= 0 for all v."""
    return all(val <= 0 for val in form_values(g, x))


def eca_nonempty(g: ResolutionGraph, chern: RatCycle) -> bool:
    """ECa^{l'}(Z) is nonempty iff -l' lies in S'."""
    return in_lipman_cone(g, -chern)


def e_star_coordinates(g: ResolutionGraph, x: RatCycle) -> tuple[Fraction, ...]:
    """a_v with x = sum a_v E*_v, namely a_v = -(x, E_v)."""
    return tuple(-val for val in form_values(g, x))


def from_e_star(g: ResolutionGraph, a: Sequence[int | Fraction]) -> RatCycle:
    """sum a_v E*_v as an E-basis cycle."""
    ninv = neg_inverse(g)
    coeffs = [
        sum((ninv[i][j] * a[j] for j in range(g.size)), Fraction(0))
        for i in range(g.size)
    ]
    return RatCycle.make(g.vertices, coeffs)
