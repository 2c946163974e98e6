"""Dominance of Abel maps, generic h^1, S'_dom / Van' membership and dim V(I).

Conventions: the argument `chern` is a Chern class l' (so -l' is the cycle that
lives in S'). `in_sdom(g, l')` and `in_van(g, l')` test the cycle -l'.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import networkx as nx

from src.domain.cycles import IntCycle, RatCycle
from src.domain.graph import ResolutionGraph
from src.domain.results import H1Bounds
from src.errors import ComponentNotSupported, EcaEmpty, NonEffectiveZ
from src.lattice.core import (
    basis_cycle,
    chi,
    eca_nonempty,
    form_values,
    in_lipman_cone,
    pairing,
    require_dual,
    zero_cycle,
)
from src.lattice.minimize import min_chi_box, min_chi_orthant
from src.utils.logger import get_logger

logger = get_logger("plumbline.lattice")


# =============================================================================
# DOMINANCE AND GENERIC COHOMOLOGY
# =============================================================================


def _require_eca(g: ResolutionGraph, chern: RatCycle) -> None:
    if not eca_nonempty(g, chern):
        raise EcaEmpty(f"-l' = {(-chern)!r} is not in the Lipman cone")


def is_dominant(g: ResolutionGraph, chern: RatCycle, Z: IntCycle) -> bool:
    """c^{l'}(Z) is dominant iff chi(-l') < chi(-l' + l) for all 0 < l <= Z.

    Raises:
        EcaEmpty, NonEffectiveZ
    """
    _require_eca(g, chern)
    result = min_chi_box(g, chern, Z)
    return (
        result.minimizer_count == 1
        and result.minimal_minimizer.is_zero()
        and result.min_value == chi(g, -chern)
    )


def generic_h1(g: ResolutionGraph, chern: RatCycle, Z: IntCycle) -> int:
    """h^1(Z, L) for generic L with c_1 = l': chi(-l') - min_{0<=l<=Z} chi(-l'+l)."""
    result = min_chi_box(g, chern, Z)
    return int(chi(g, -chern) - result.min_value)


def generic_h0(g: ResolutionGraph, chern: RatCycle, Z: IntCycle) -> int:
    """h^0(Z, L) for generic L.

    Equals max_{0<=l<=Z} chi(Z-l) + (Z-l, l'-l); that maximum is
    chi(Z) + (Z, l') + generic_h1, which is what is evaluated here.
    """
    return int(chi(g, Z) + pairing(g, Z, chern) + generic_h1(g, chern, Z))


def h1_vanishing(g: ResolutionGraph, Z: IntCycle) -> bool:
    """Artin-type test: h^1(O_Z) = 0 for every analytic type iff chi(l) > 0 for 0 < l <= Z."""
    return is_dominant(g, zero_cycle(g), Z)


def is_rational(g: ResolutionGraph) -> bool:
    """chi(l) > 0 for every l > 0."""
    return in_sdom(g, zero_cycle(g))


def min_chi_positive(g: ResolutionGraph) -> Fraction:
    """min over l > 0 of chi(l)."""
    if is_rational(g):
        from src.lattice.laufer import laufer_zmin

        return chi(g, laufer_zmin(g))
    return min_chi_orthant(g, zero_cycle(g)).min_value


def is_elliptic(g: ResolutionGraph) -> bool:
    return min_chi_positive(g) == 0


# =============================================================================
# SEMIGROUPS
# =============================================================================


def in_sdom(g: ResolutionGraph, chern: RatCycle) -> bool:
    """-l' in S'_dom: chi(l) + (l', l) > 0 for every l > 0.

    Decided by minimizing chi(-l' + l) over l >= 0 inside the sound ellipsoid
    box: the test holds iff l = 0 is the unique minimizer.

    Raises:
        NotInDualLattice
    """
    require_dual(g, chern)
    result = min_chi_orthant(g, chern)
    return (
        result.minimizer_count == 1
        and result.minimal_minimizer.is_zero()
        and result.min_value == chi(g, -chern)
    )


def in_van(g: ResolutionGraph, chern: RatCycle) -> bool:
    """-l' in Van': chi(-l') <= chi(-l' + l) for every l >= 0.

    Raises:
        NotInDualLattice
    """
    require_dual(g, chern)
    return min_chi_orthant(g, chern).min_value == chi(g, -chern)


def _sdom_seed(g: ResolutionGraph, chern: RatCycle) -> list[int]:
    """l >= 0 with (-l' + l, E_v) <= min(0, (E_v^2 + 2)/2) for all v.

    Such a cycle lies in S' and in Z_K/2 + S'_Q, hence in S'_dom. Found by a
    Laufer-type sequence, which stays below every solution.
    """
    targets = [min(Fraction(0), Fraction(e + 2, 2)) for e in g.euler]
    values = list(form_values(g, -chern))
    l = [0] * g.size
    while True:
        i = next((k for k in range(g.size) if values[k] > targets[k]), None)
        if i is None:
            return l
        l[i] += 1
        values[i] += g.euler[i]
        for j in g.adjacency[i]:
            values[j] += 1


def _level(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Points 0 <= pt <= caps with coordinate sum `total`, lexicographically."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for first in range(max(0, total - rest), min(caps[0], total) + 1):
        for tail in _level(total - first, caps[1:]):
            yield (first, *tail)


def l_dom(g: ResolutionGraph, chern: RatCycle) -> IntCycle:
    """The least l >= 0 with -l' + l in S'_dom.

    S'_dom is min-stable, so the least solution is below the Laufer seed and is
    the only solution of smallest coordinate sum. The seed box is walked one
    level of equal coordinate sum at a time.

    Raises:
        NotInDualLattice
    """
    require_dual(g, chern)
    seed = _sdom_seed(g, chern)
    logger.debug("l_dom: seed %s", seed)
    for total in range(sum(seed) + 1):
        for point in _level(total, seed):
            l = IntCycle(g.vertices, point)
            shifted = chern - l
            if not in_lipman_cone(g, -shifted):
                continue
            if in_sdom(g, shifted):
                logger.debug("l_dom: found at level %d", total)
                return l
    # unreachable: the seed itself is a member
    return IntCycle(g.vertices, seed)


# =============================================================================
# COHOMOLOGY CYCLES AND S'_pt
# =============================================================================


def structure_coh_cycle(g: ResolutionGraph, Z: IntCycle) -> IntCycle:
    """Z_coh(Z, O_Z) for the generic analytic structure.

    There h^1(O_l) = 1 - min_{0 < l2 <= l} chi(l2), so the cohomology cycle is
    the least minimizer of chi over 0 < l <= Z, or 0 when that minimum is
    positive (h^1(O_Z) = 0). The punctured box is covered by the boxes
    E_v + [0, Z - E_v] for v in |Z|.

    Raises:
        NonEffectiveZ
    """
    if Z.is_zero() or not Z.is_integral or not Z.is_effective():
        raise NonEffectiveZ(f"Z must be a nonzero effective integral cycle, got {Z!r}")
    best: Fraction | None = None
    meet: RatCycle | None = None
    for v in Z.support():
        E_v = basis_cycle(g, v)
        rest = Z - E_v
        if rest.is_zero():
            value, low = chi(g, E_v), E_v
        else:
            result = min_chi_box(g, -E_v, rest)
            value, low = result.min_value, E_v + result.minimal_minimizer
        if best is None or value < best:
            best, meet = value, low
        elif value == best:
            meet = meet.meet(low)
    logger.debug("structure_coh_cycle: min chi over 0 < l <= Z is %s", best)
    if best >= 1:
        return zero_cycle(g)
    return meet.to_int()


def spt_generators(g: ResolutionGraph, Z: IntCycle, chern: RatCycle | None = None) -> set[str]:
    """Vertices v with E_v not in the support of the cohomology cycle.

    With l' = 0 (the default) the bundle is O_Z at the generic analytic
    structure and S'_pt is generated by the E*_v returned here. A nonzero
    Chern class uses Z_coh(Z, l') of a generic bundle instead.
    """
    if chern is None or chern.is_zero():
        coh = structure_coh_cycle(g, Z)
    else:
        coh = min_chi_box(g, chern, Z).minimal_minimizer
    return {v for v, c in zip(g.vertices, coh.coeffs) if c == 0}


def h1_bounds(
    g: ResolutionGraph,
    chern: RatCycle,
    Z: IntCycle,
    h1_OZ: int | None = None,
) -> H1Bounds:
    """Interval containing h^1(Z, L) for every L with c_1(L) = l'.

    The lower end is the generic value; the upper end is
    h^1(O_Z) + chi(-l') - min chi(-l' + l). Without a supplied h^1(O_Z) the
    generic value h^1(O_Z) = generic_h1(g, 0, Z) is used.

    Raises:
        EcaEmpty, NonEffectiveZ
    """
    _require_eca(g, chern)
    lower = generic_h1(g, chern, Z)
    notes: list[str] = []
    supplied = h1_OZ is not None
    if h1_OZ is None:
        h1_OZ = generic_h1(g, zero_cycle(g), Z)
        notes.append("h1(O_Z) taken at the generic analytic structure")
    upper = h1_OZ + lower
    # bundles without sections: h^1 = -chi(Z) - (Z, l') <= -chi(Z)
    no_sections = int(-chi(g, Z))
    notes.append(f"no fixed components: h1 <= {h1_OZ}")
    return H1Bounds(
        lower=lower,
        upper=upper,
        h1_OZ=h1_OZ,
        h1_OZ_supplied=supplied,
        no_sections_bound=no_sections,
        notes=notes,
    )


# =============================================================================
# dim V(I)
# =============================================================================


def complement_components(g: ResolutionGraph, I: Iterable[str]) -> list[tuple[str, ...]]:
    """Connected components of the graph with I removed, in vertex order."""
    keep = set(I)
    sub = g.nx_graph.subgraph([v for v in g.vertices if v not in keep])
    comps = [tuple(v for v in g.vertices if v in comp) for comp in nx.connected_components(sub)]
    return sorted(comps, key=lambda comp: g.index[comp[0]])


def dim_V(
    g: ResolutionGraph,
    I: Iterable[str],
    pg_full: int,
    pg_components: Sequence[int | None],
) -> int:
    """dim V(I) = p_g - sum of p_g over the components of the complement of I.

    `pg_components` is aligned with `complement_components(g, I)`.

    Raises:
        ComponentNotSupported
    """
    comps = complement_components(g, I)
    if len(pg_components) < len(comps):
        raise ComponentNotSupported(
            f"{len(comps)} complement components but only {len(pg_components)} p_g values"
        )
    total = 0
    for comp, pg in zip(comps, pg_components):
        if pg is None:
            raise ComponentNotSupported(f"no p_g supplied for component {list(comp)}")
        total += pg
    return pg_full - total


def dim_V_from_h1(h1_OZ: int, h1_OZ_complement: int) -> int:
    """The same dimension as h^1(O_Z) - h^1(O_{Z restricted to the complement of I})."""
    return h1_OZ - h1_OZ_complement

