"""Topological Poincaré series Z(t) = prod_v (1 - t^{E*_v})^{delta_v - 2}.

Exponents are kept in E*-coordinates a = (a_v), where the product factorizes
vertex by vertex. Counting functions are computed two ways: directly from a
truncated expansion, and from the reduced class-0 series through a dynamic
program over the tree in E-coordinates.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from src.config import STABILIZATION_FRACTION, get_n_range
from src.domain.cycles import IntCycle, RatCycle
from src.domain.graph import ResolutionGraph
from src.domain.series import ExpSeries
from src.errors import (
    BadRange,
    BoundInsufficient,
    ExponentOutOfBound,
    NotStabilized,
    UnknownVertex,
)
from src.lattice.core import (
    chi,
    class_rep,
    e_star_coordinates,
    from_e_star,
    neg_inverse,
    require_dual,
)
from src.utils.logger import get_logger
from src.utils.rational import ceil_fraction, floor_fraction

logger = get_logger("plumbline.poincare")


# =============================================================================
# VERTEX FACTORS
# =============================================================================


def factor_coefficient(delta: int, k: int) -> int:
    """[t^k] (1 - t)^{delta - 2}."""
    if k < 0:
        return 0
    if delta == 0:
        return k + 1
    if delta == 1:
        return 1
    if delta == 2:
        return 1 if k == 0 else 0
    return (-1) ** k * math.comb(delta - 2, k)


def _bound_tuple(g: ResolutionGraph, bound: int | Sequence[int]) -> tuple[int, ...]:
    if isinstance(bound, int):
        return (bound,) * g.size
    bound = tuple(int(b) for b in bound)
    if len(bound) != g.size:
        raise ValueError(f"bound has {len(bound)} entries for {g.size} vertices")
    return bound


# =============================================================================
# EXPANSION AND COEFFICIENTS
# =============================================================================


def expand_Z(g: ResolutionGraph, bound: int | Sequence[int]) -> ExpSeries:
    """Truncated expansion with a_v <= bound_v."""
    caps = _bound_tuple(g, bound)
    per_vertex = []
    for delta, cap in zip(g.degrees, caps):
        nonzero = [(k, factor_coefficient(delta, k)) for k in range(cap + 1)]
        per_vertex.append([(k, c) for k, c in nonzero if c != 0])
    terms: dict[tuple[int, ...], int] = {}
    for combo in itertools.product(*per_vertex):
        terms[tuple(k for k, _ in combo)] = math.prod(c for _, c in combo)
    logger.debug("expand_Z: %d terms within bound %s", len(terms), caps)
    return ExpSeries(graph=g, terms=terms, bound=caps)


def coefficient(series: ExpSeries, x: RatCycle) -> int:
    """z(l') for l' = x.

    Raises:
        NotInDualLattice, ExponentOutOfBound
    """
    g = series.graph
    require_dual(g, x)
    a = tuple(int(v) for v in e_star_coordinates(g, x))
    if any(v < 0 for v in a):
        return 0
    if any(v > b for v, b in zip(a, series.bound)):
        raise ExponentOutOfBound(f"E*-exponent {a} exceeds bound {series.bound}")
    return series.terms.get(a, 0)


def term_cycle(g: ResolutionGraph, a: Sequence[int]) -> RatCycle:
    return from_e_star(g, a)


def class_part(series: ExpSeries, h: RatCycle) -> ExpSeries:
    """Z_h: the terms whose class representative is h."""
    g = series.graph
    target = class_rep(g, h)
    terms = {a: c for a, c in series.terms.items() if class_rep(g, term_cycle(g, a)) == target}
    return ExpSeries(graph=g, terms=terms, bound=series.bound)


# =============================================================================
# COUNTING FUNCTIONS
# =============================================================================


def coverage_bound(g: ResolutionGraph, target: IntCycle) -> tuple[int, ...]:
    """Caps beyond which a_w E*_w >= target by itself, so the term is excluded."""
    ninv = neg_inverse(g)
    caps = []
    for w in range(g.size):
        ratio = max(Fraction(target.coeffs[u]) / ninv[u][w] for u in range(g.size))
        caps.append(max(0, ceil_fraction(ratio)))
    return tuple(caps)


def _check_target(g: ResolutionGraph, target: IntCycle) -> None:
    if target.vertices != g.vertices or not target.is_integral:
        raise ValueError("target must be an integral cycle on this graph")


def counting_sigma(g: ResolutionGraph, series: ExpSeries, target: IntCycle) -> int:
    """sigma(l) = sum of z(l~) over l~ in L with l~ not >= l, from an explicit series.

    Raises:
        BoundInsufficient
    """
    _check_target(g, target)
    needed = coverage_bound(g, target)
    if any(b < n for b, n in zip(series.bound, needed)):
        raise BoundInsufficient(f"series bound {series.bound} does not cover {needed}")
    ninv = neg_inverse(g)
    n = g.size
    goal = target.coeffs
    total = 0
    for a, c in series.terms.items():
        coords = [sum((ninv[u][w] * a[w] for w in range(n)), Fraction(0)) for u in range(n)]
        if any(x.denominator != 1 for x in coords):
            continue
        if all(x >= y for x, y in zip(coords, goal)):
            continue
        total += c
    return total


def _indices(g: ResolutionGraph, I: Iterable[str]) -> list[int]:
    """Vertex indices of I.

    Raises:
        UnknownVertex
    """
    I = list(I)
    unknown = [v for v in I if v not in g.index]
    if unknown:
        raise UnknownVertex(f"unknown vertices in I: {unknown}")
    return [g.index[v] for v in I]


def _e_star_support(g: ResolutionGraph, l: RatCycle) -> tuple[list[int], tuple[int, ...]]:
    require_dual(g, l)
    a = tuple(int(v) for v in e_star_coordinates(g, l))
    if any(v < 0 for v in a):
        raise ValueError(f"{l!r} is not in the Lipman cone")
    return [i for i, v in enumerate(a) if v > 0], a


class ReducedCounter:
    """Class-0 reduced series p_I(x_I) = sum z(l~) over l~ in L with l~|_I = x_I.

    The sum runs over integral E-coordinates with every E*-coordinate
    a_v = -(l~, E_v) nonnegative. Given x_I, each free coordinate satisfies
    0 <= x_w <= min_u rho(w, u) x_u with rho(w, u) = max_v E*_v[w] / E*_v[u].
    The tree structure of the form turns the sum into a product of local
    convolutions, evaluated from the leaves toward a pinned root.
    """

    def __init__(self, g: ResolutionGraph, I: Iterable[str]):
        self.g = g
        self.I = _indices(g, I)
        if not self.I:
            raise ValueError("I must be nonempty")
        ninv = neg_inverse(g)
        n = g.size
        self.rho = [
            [max(ninv[w][v] / ninv[u][v] for v in range(n)) for u in range(n)]
            for w in range(n)
        ]
        self.root = self.I[0]
        self.parent, self.children = _rooted(g, self.root)
        self.degrees = g.degrees
        self._cache: dict[tuple[int, ...], int] = {}

    def upper(self, w: int, pinned: dict[int, int]) -> int:
        return min(floor_fraction(self.rho[w][u] * x) for u, x in pinned.items())

    def value(self, x_I: Sequence[int]) -> int:
        """p_I at x_I (values aligned with the order of I)."""
        key = tuple(x_I)
        if key in self._cache:
            return self._cache[key]
        pinned = dict(zip(self.I, key))
        g = self.g
        ranges = []
        for w in range(g.size):
            if w in pinned:
                ranges.append((pinned[w], pinned[w]))
            else:
                ranges.append((0, self.upper(w, pinned)))
        result = self._tree_sum(ranges)
        self._cache[key] = result
        return result

    def _tree_sum(self, ranges: list[tuple[int, int]]) -> int:
        g = self.g
        degrees = self.degrees
        g_memo: dict[tuple[int, int], list[int]] = {}
        d_memo: dict[tuple[int, int], list[int]] = {}

        def coef(w: int, a: int) -> int:
            return factor_coefficient(degrees[w], a)

        def child_sums(w: int, x_w: int) -> list[int]:
            # polynomial in s = sum of children coordinates, s <= -e_w x_w
            key = (w, x_w)
            if key in g_memo:
                return g_memo[key]
            cap = -g.euler[w] * x_w
            poly = [1]
            for ch in self.children[w]:
                dist = distribution(ch, x_w)
                new = [0] * min(cap + 1, len(poly) + len(dist) - 1)
                for s1, c1 in enumerate(poly):
                    if c1 == 0:
                        continue
                    for s2, c2 in enumerate(dist):
                        if s1 + s2 >= len(new):
                            break
                        if c2:
                            new[s1 + s2] += c1 * c2
                poly = new
                if not poly:
                    break
            g_memo[key] = poly
            return poly

        def local(w: int, x_w: int, x_parent: int) -> int:
            base = -g.euler[w] * x_w - x_parent
            total = 0
            for s, c in enumerate(child_sums(w, x_w)):
                if c:
                    total += coef(w, base - s) * c
            return total

        def distribution(w: int, x_parent: int) -> list[int]:
            # index x_w -> weight of the subtree of w given the parent coordinate
            key = (w, x_parent)
            if key in d_memo:
                return d_memo[key]
            lo, hi = ranges[w]
            dist = [0] * (hi + 1)
            for x_w in range(lo, hi + 1):
                dist[x_w] = local(w, x_w, x_parent)
            d_memo[key] = dist
            return dist

        x_root = ranges[self.root][0]
        return local(self.root, x_root, 0)


def _rooted(g: ResolutionGraph, root: int) -> tuple[list[int | None], list[list[int]]]:
    parent: list[int | None] = [None] * g.size
    children: list[list[int]] = [[] for _ in range(g.size)]
    seen = {root}
    stack = [root]
    while stack:
        i = stack.pop()
        for j in g.adjacency[i]:
            if j not in seen:
                seen.add(j)
                parent[j] = i
                children[i].append(j)
                stack.append(j)
    return parent, children


def reduced_series(g: ResolutionGraph, I: Iterable[str], bound: int | Sequence[int]) -> dict[tuple[int, ...], int]:
    """Nonzero coefficients of the class-0 I-reduced series with 0 <= x_u <= bound_u."""
    I = list(I)
    counter = ReducedCounter(g, I)
    caps = (bound,) * len(I) if isinstance(bound, int) else tuple(bound)
    out = {}
    for x_I in itertools.product(*(range(c + 1) for c in caps)):
        val = counter.value(x_I)
        if val:
            out[x_I] = val
    return out


def project_series(series: ExpSeries, I: Iterable[str]) -> dict[tuple[int, ...], int]:
    """Reduce an explicit expansion: class-0 terms grouped by l~|_I."""
    g = series.graph
    idx = _indices(g, I)
    out: dict[tuple[int, ...], int] = {}
    for a, c in series.terms.items():
        cyc = term_cycle(g, a)
        if not cyc.is_integral:
            continue
        key = tuple(cyc.coeffs[i].numerator for i in idx)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _reduced_box(counter: ReducedCounter, target: IntCycle) -> list[int]:
    """Caps on x_I covering every x with x_I not >= target_I."""
    caps = []
    for w in counter.I:
        caps.append(
            max(
                floor_fraction(counter.rho[w][u] * (target.coeffs[u] - 1))
                for u in counter.I
            )
        )
    return caps


def reduced_counting(
    g: ResolutionGraph,
    I: Iterable[str],
    target: IntCycle,
    series: ExpSeries | None = None,
    counter: ReducedCounter | None = None,
) -> int:
    """sigma(l) through the I-reduced series: sum of p_I(x_I) over x_I not >= l|_I.

    With `series` given the reduction is taken from that expansion (after the
    coverage check); otherwise the tree dynamic program is used. I must
    contain the E*-support of the target.

    Raises:
        BoundInsufficient, BadRange, ValueError (target not in S')
    """
    _check_target(g, target)
    I = list(I)
    idx = _indices(g, I)
    support, _ = _e_star_support(g, target)
    missing = [g.vertices[i] for i in support if i not in idx]
    if missing:
        raise BadRange(f"I = {I} misses {missing} from the E*-support of the target")
    goal = [target.coeffs[i].numerator for i in idx]
    if series is not None:
        needed = coverage_bound(g, target)
        if any(b < n for b, n in zip(series.bound, needed)):
            raise BoundInsufficient(f"series bound {series.bound} does not cover {needed}")
        reduced = project_series(series, I)
        return sum(c for x, c in reduced.items() if not all(a >= b for a, b in zip(x, goal)))
    counter = counter or ReducedCounter(g, I)
    if len(idx) == 1:
        return sum(counter.value((m,)) for m in range(goal[0]))
    caps = _reduced_box(counter, target)
    total = 0
    for x_I in itertools.product(*(range(c + 1) for c in caps)):
        if all(a >= b for a, b in zip(x_I, goal)):
            continue
        total += counter.value(x_I)
    return total


# =============================================================================
# PERIODIC CONSTANT
# =============================================================================


def counting_table(
    g: ResolutionGraph,
    l: IntCycle,
    n_range: tuple[int, int] | None = None,
) -> list[dict]:
    """Rows {n, sigma, chi, sigma_minus_chi} for sigma(n l) - chi(n l)."""
    n0, n1 = get_n_range(n_range)
    support, _ = _e_star_support(g, l)
    I = [g.vertices[i] for i in support]
    counter = ReducedCounter(g, I)
    rows = []
    for n in range(n0, n1 + 1):
        target = l * n
        sigma = reduced_counting(g, I, target, counter=counter)
        chi_n = int(chi(g, target))
        rows.append({"n": n, "sigma": sigma, "chi": chi_n, "sigma_minus_chi": sigma - chi_n})
    return rows


def periodic_constant(
    g: ResolutionGraph,
    l: IntCycle,
    n_range: tuple[int, int] | None = None,
) -> tuple[int, int]:
    """Stabilized value of sigma(n l) - chi(n l) and the first n from which it holds.

    The difference must be constant over the last ceil((n1 - n0) * 1/3) values
    of the range (at least two).

    Raises:
        NotStabilized, ValueError (l not integral or not in S')
    """
    if not l.is_integral:
        raise ValueError("l must be an integral cycle")
    n0, n1 = get_n_range(n_range)
    rows = counting_table(g, l, (n0, n1))
    diffs = [row["sigma_minus_chi"] for row in rows]
    tail = max(2, ceil_fraction((n1 - n0) * STABILIZATION_FRACTION))
    if len(diffs) < tail:
        raise NotStabilized(f"range ({n0}, {n1}) is too short to test stabilization")
    constant = diffs[-1]
    if any(d != constant for d in diffs[-tail:]):
        raise NotStabilized(f"sigma - chi not constant over the last {tail} values: {diffs}")
    first = n1
    for row in reversed(rows):
        if row["sigma_minus_chi"] != constant:
            break
        first = row["n"]
    logger.debug("periodic constant %d from n=%d (diffs %s)", constant, first, diffs)
    return constant, first


@lru_cache(maxsize=64)
def class_order(g: ResolutionGraph, v: str) -> int:
    """Order of [E*_v] in H."""
    from src.lattice.core import dual_cycle

    coeffs = dual_cycle(g, v).coeffs
    return math.lcm(*(c.denominator for c in coeffs))
