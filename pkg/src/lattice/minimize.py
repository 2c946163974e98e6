"""Minimization of q(l) = chi(x + l) over integer boxes and the positive orthant.

q is a quadratic in l with positive definite quadratic part -(l, l)/2:

    q(l) = chi(x) + sum_v lin_v l_v + 1/2 l^T Q l,   Q = -M,
    lin_v = (E_v^2 + 2)/2 - (x, E_v).

Its continuous minimizer is c = x' - x with x' = Z_K/2, so c = -N lin with
N = -M^{-1}, and q(l) - q(c) = 1/2 (l - c)^T Q (l - c). The sublevel set
{q <= B} is therefore an ellipsoid whose extent along coordinate v is
|l_v - c_v| <= sqrt(2 (B - q(c)) N_vv). Integer ranges below are derived from
that inequality with exact rationals and integer square roots, so every point
with q <= B is enumerated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence

from src.config import MAX_EXHAUSTIVE_VOLUME
from src.domain.cycles import IntCycle, RatCycle
from src.domain.graph import ResolutionGraph
from src.domain.results import MinimizationResult
from src.errors import NonEffectiveZ, NotInDualLattice
from src.lattice.core import (
    chi,
    e_star_coordinates,
    form_values,
    from_e_star,
    neg_inverse,
    restrict,
)
from src.utils.logger import get_logger
from src.utils.rational import ceil_fraction, floor_fraction

logger = get_logger("plumbline.lattice")


# =============================================================================
# THE QUADRATIC
# =============================================================================


@dataclass(frozen=True)
class ChiQuadratic:
    """q(l) = chi(base + l), scaled to integers for enumeration.

    2 * scale * (q(l) - q(0)) = sum_v A_v l_v + scale * l^T Q l with integer A.
    """

    graph: ResolutionGraph
    base: tuple[Fraction, ...]
    constant: Fraction
    lin: tuple[Fraction, ...]
    scale: int
    linear: tuple[int, ...]

    @classmethod
    def build(cls, g: ResolutionGraph, base: RatCycle | Sequence) -> "ChiQuadratic":
        base_coeffs = tuple(base.coeffs if isinstance(base, RatCycle) else (Fraction(b) for b in base))
        values = form_values(g, base_coeffs)
        lin = tuple(Fraction(e + 2, 2) - val for e, val in zip(g.euler, values))
        doubled = [2 * a for a in lin]
        scale = reduce(math.lcm, (a.denominator for a in doubled), 1)
        return cls(
            graph=g,
            base=base_coeffs,
            constant=chi(g, base_coeffs),
            lin=lin,
            scale=scale,
            linear=tuple(int(a * scale) for a in doubled),
        )

    def scaled(self, l: Sequence[int]) -> int:
        """2 * scale * (q(l) - q(0))."""
        g = self.graph
        total = 0
        for i, t in enumerate(l):
            if t == 0:
                continue
            total += self.linear[i] * t - self.scale * g.euler[i] * t * t
            for j in g.adjacency[i]:
                total -= self.scale * t * l[j]
        return total

    def value(self, l: Sequence[int]) -> Fraction:
        return self.constant + Fraction(self.scaled(l), 2 * self.scale)

    def unscale(self, scaled_value: int) -> Fraction:
        return self.constant + Fraction(scaled_value, 2 * self.scale)

    def rescale(self, value: Fraction) -> Fraction:
        """Inverse of `unscale`, kept rational."""
        return (value - self.constant) * 2 * self.scale

    def center(self) -> tuple[Fraction, ...]:
        ninv = neg_inverse(self.graph)
        n = self.graph.size
        return tuple(-sum((ninv[i][j] * self.lin[j] for j in range(n)), Fraction(0)) for i in range(n))

    def center_value(self) -> Fraction:
        ninv = neg_inverse(self.graph)
        n = self.graph.size
        quad = sum(
            (self.lin[i] * ninv[i][j] * self.lin[j] for i in range(n) for j in range(n)),
            Fraction(0),
        )
        return self.constant - quad / 2

    def sublevel_ranges(self, level: Fraction) -> list[tuple[int, int]]:
        """Integer ranges per coordinate containing every l with q(l) <= level."""
        ninv = neg_inverse(self.graph)
        slack = level - self.center_value()
        c = self.center()
        return [_int_range(c[i], 2 * slack * ninv[i][i]) for i in range(self.graph.size)]


def _int_range(center: Fraction, radius_sq: Fraction) -> tuple[int, int]:
    """Integers k with (k - center)^2 <= radius_sq; (1, 0) when empty."""
    if radius_sq < 0:
        return (1, 0)
    r = math.isqrt(ceil_fraction(radius_sq)) + 1
    hi = floor_fraction(center) + r
    while hi >= center and (hi - center) ** 2 > radius_sq:
        hi -= 1
    lo = ceil_fraction(center) - r
    while lo <= center and (center - lo) ** 2 > radius_sq:
        lo += 1
    if lo > hi or (hi - center) ** 2 > radius_sq:
        return (1, 0)
    return (lo, hi)


# =============================================================================
# ENUMERATION
# =============================================================================


class _Tracker:
    """Best value, minimizer count and coordinatewise meet of minimizers."""

    def __init__(self, incumbent: int | None):
        self.incumbent = incumbent
        self.best: int | None = None
        self.meet: list[int] | None = None
        self.count = 0

    def offer(self, value: int, point: Sequence[int]) -> None:
        if self.best is None or value < self.best:
            self.best = value
            self.meet = list(point)
            self.count = 1
            if self.incumbent is None or value < self.incumbent:
                self.incumbent = value
        elif value == self.best:
            self.count += 1
            self.meet = [min(a, b) for a, b in zip(self.meet, point)]

    @property
    def threshold(self) -> int | None:
        if self.best is None:
            return self.incumbent
        if self.incumbent is None:
            return self.best
        return min(self.best, self.incumbent)


def _pruned_search(quad: ChiQuadratic, ranges: list[tuple[int, int]], incumbent: int | None) -> _Tracker:
    """Depth-first search over `ranges` (all lower ends >= 0) with a separable bound.

    With l >= 0 every edge term -scale*l_u*l_v is nonpositive, so replacing each
    unassigned factor by its upper end bounds it from below. Diagonal terms are
    convex in one variable and are bounded by their minimum over the range.
    Branches are cut only when the bound exceeds the threshold strictly, so all
    minimizers are visited.
    """
    g = quad.graph
    n = g.size
    order = _tree_order(g)
    pos = {v: k for k, v in enumerate(order)}
    s = quad.scale

    def diag(i: int, t: int) -> int:
        return quad.linear[i] * t - s * g.euler[i] * t * t

    diag_min = []
    for i in range(n):
        lo, hi = ranges[i]
        diag_min.append(min(diag(i, t) for t in _convex_candidates(quad, i, lo, hi)))
    # suffix_min[k]: sum of diagonal minima over order[k:]
    suffix_min = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix_min[k] = suffix_min[k + 1] + diag_min[order[k]]
    # free_edges[k]: edge penalty among vertices order[k:], at upper ends
    free_edges = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        i = order[k]
        pen = sum(ranges[i][1] * ranges[j][1] for j in g.adjacency[i] if pos[j] > k)
        free_edges[k] = free_edges[k + 1] + 2 * s * pen

    tracker = _Tracker(incumbent)
    point = [0] * n

    def cross_penalty(k: int) -> int:
        total = 0
        for kk in range(k):
            i = order[kk]
            if point[i] == 0:
                continue
            for j in g.adjacency[i]:
                if pos[j] >= k:
                    total += point[i] * ranges[j][1]
        return 2 * s * total

    def visit(k: int, partial: int) -> None:
        if k == n:
            tracker.offer(partial, point)
            return
        threshold = tracker.threshold
        if threshold is not None:
            bound = partial + suffix_min[k] - free_edges[k] - cross_penalty(k)
            if bound > threshold:
                return
        i = order[k]
        lo, hi = ranges[i]
        for t in range(lo, hi + 1):
            delta = diag(i, t)
            if t:
                for j in g.adjacency[i]:
                    if pos[j] < k:
                        delta -= 2 * s * t * point[j]
            point[i] = t
            visit(k + 1, partial + delta)
        point[i] = 0

    visit(0, 0)
    return tracker


def _convex_candidates(quad: ChiQuadratic, i: int, lo: int, hi: int) -> list[int]:
    """Integer points where a convex univariate diagonal term can be minimal."""
    g = quad.graph
    a = -g.euler[i] * quad.scale
    # derivative zero at t = -linear / (2a)
    vertex = Fraction(-quad.linear[i], 2 * a)
    cands = {lo, hi, floor_fraction(vertex), ceil_fraction(vertex)}
    return [t for t in cands if lo <= t <= hi]


def _tree_order(g: ResolutionGraph) -> list[int]:
    """Breadth-first vertex order so each vertex follows its tree parent."""
    seen = [False] * g.size
    order: list[int] = []
    for root in range(g.size):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            i = queue.pop(0)
            order.append(i)
            for j in g.adjacency[i]:
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
    return order


def _box_points(ranges: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(lo, hi + 1) for lo, hi in ranges))


def _volume(ranges: list[tuple[int, int]]) -> int:
    return math.prod(max(0, hi - lo + 1) for lo, hi in ranges)


def _result(
    quad: ChiQuadratic,
    tracker: _Tracker,
    ranges: list[tuple[int, int]],
    strategy: str,
) -> MinimizationResult:
    g = quad.graph
    return MinimizationResult(
        min_value=quad.unscale(tracker.best),
        minimal_minimizer=IntCycle(g.vertices, tracker.meet),
        minimizer_count=tracker.count,
        search_bound=IntCycle(g.vertices, [hi for _, hi in ranges]),
        search_lower=IntCycle(g.vertices, [lo for lo, _ in ranges]),
        strategy=strategy,
    )


def _check_box(g: ResolutionGraph, Z: IntCycle) -> None:
    if Z.vertices != g.vertices:
        raise ValueError("Z does not live on this graph")
    if not Z.is_integral or not Z.is_effective() or Z.is_zero():
        raise NonEffectiveZ(f"Z must be a nonzero effective integral cycle, got {Z!r}")


def _box_ranges(quad: ChiQuadratic, Z: IntCycle) -> list[tuple[int, int]]:
    """[0, Z_v] cut down by the ellipsoid {q <= q(0)}; 0 is always kept."""
    ellipse = quad.sublevel_ranges(quad.constant)
    ranges = []
    for (lo, hi), z in zip(ellipse, Z.ints):
        ranges.append((max(0, lo), min(z, hi)) if lo <= hi else (0, 0))
    return ranges


# =============================================================================
# PUBLIC API
# =============================================================================


def min_chi_box(g: ResolutionGraph, chern: RatCycle, Z: IntCycle) -> MinimizationResult:
    """Minimize chi(-l' + l) over integer 0 <= l <= Z (pruned search).

    When Z is not supported on every vertex the search runs on the subgraph
    induced by |Z| (see `_min_chi_restricted`).

    Raises:
        NonEffectiveZ
    """
    _check_box(g, Z)
    support = Z.support()
    if len(support) < g.size:
        return _min_chi_restricted(g, chern, Z, support)
    quad = ChiQuadratic.build(g, -chern)
    ranges = _box_ranges(quad, Z)
    logger.debug("min_chi_box: ranges %s (volume %d)", ranges, _volume(ranges))
    tracker = _pruned_search(quad, ranges, incumbent=0)
    return _result(quad, tracker, ranges, "pruned")


def _min_chi_restricted(
    g: ResolutionGraph,
    chern: RatCycle,
    Z: IntCycle,
    support: tuple[str, ...],
) -> MinimizationResult:
    """min_chi_box for Z with |Z| a proper subset of the vertices.

    On the induced subgraph the Chern class is replaced by the cycle with the
    same pairings (-l', E_v) for v in |Z|. For l supported on |Z| both chi
    and (-l', l) agree with their values on the full graph, so the two
    quadratics differ by a constant and share their minimizers.
    """
    sub = restrict(g, support)
    a = e_star_coordinates(g, -chern)
    idx = [g.index[v] for v in support]
    base = from_e_star(sub, [a[i] for i in idx])
    sub_Z = IntCycle(sub.vertices, [Z.ints[i] for i in idx])
    quad = ChiQuadratic.build(sub, base)
    ranges = _box_ranges(quad, sub_Z)
    logger.debug(
        "min_chi_box: restricted to %d of %d vertices, ranges %s",
        sub.size, g.size, ranges,
    )
    tracker = _pruned_search(quad, ranges, incumbent=0)

    def lift(values: Sequence[int]) -> IntCycle:
        full = [0] * g.size
        for i, value in zip(idx, values):
            full[i] = value
        return IntCycle(g.vertices, full)

    return MinimizationResult(
        min_value=quad.unscale(tracker.best) + chi(g, -chern) - quad.constant,
        minimal_minimizer=lift(tracker.meet),
        minimizer_count=tracker.count,
        search_bound=lift([hi for _, hi in ranges]),
        search_lower=lift([lo for lo, _ in ranges]),
        strategy="restricted",
    )


def min_chi_box_exhaustive(g: ResolutionGraph, chern: RatCycle, Z: IntCycle) -> MinimizationResult:
    """Plain enumeration of the whole box 0 <= l <= Z; the oracle for `min_chi_box`.

    Raises:
        NonEffectiveZ, ValueError (box larger than MAX_EXHAUSTIVE_VOLUME)
    """
    _check_box(g, Z)
    quad = ChiQuadratic.build(g, -chern)
    ranges = [(0, z) for z in Z.ints]
    volume = _volume(ranges)
    if volume > MAX_EXHAUSTIVE_VOLUME:
        raise ValueError(f"box volume {volume} exceeds {MAX_EXHAUSTIVE_VOLUME}")
    tracker = _Tracker(None)
    for point in _box_points(ranges):
        tracker.offer(quad.scaled(point), point)
    return _result(quad, tracker, ranges, "exhaustive")


def min_chi_orthant(g: ResolutionGraph, chern: RatCycle) -> MinimizationResult:
    """Minimize chi(-l' + l) over all l >= 0.

    The incumbent is the better of l = 0 and the Laufer point s(-l') + l'; the
    search box is the ellipsoid {q <= incumbent} intersected with l >= 0.
    """
    from src.lattice.laufer import laufer_reduce

    quad = ChiQuadratic.build(g, -chern)
    incumbent = quad.constant
    try:
        laufer_point = laufer_reduce(g, -chern).l.ints
        incumbent = min(incumbent, quad.value(laufer_point))
    except NotInDualLattice as e:
        logger.debug("min_chi_orthant: no Laufer incumbent (%s)", e)
    ellipse = quad.sublevel_ranges(incumbent)
    ranges = [(max(0, lo), hi) for lo, hi in ellipse]
    logger.debug("min_chi_orthant: ranges %s (volume %d)", ranges, _volume(ranges))
    scaled_incumbent = quad.rescale(incumbent)
    tracker = _pruned_search(quad, ranges, incumbent=floor_fraction(scaled_incumbent))
    return _result(quad, tracker, ranges, "pruned")


def coh_cycle(g: ResolutionGraph, chern: RatCycle, Z: IntCycle) -> IntCycle:
    """Z_coh(Z, l'): the least minimizer of chi(-l' + l) over 0 <= l <= Z."""
    return min_chi_box(g, chern, Z).minimal_minimizer


def coh_cycle_orthant(g: ResolutionGraph, chern: RatCycle) -> IntCycle:
    """Z_coh(l'): the least minimizer over the whole positive orthant."""
    return min_chi_orthant(g, chern).minimal_minimizer
