"""Laufer computation sequences: Z_min and the generalized sequence x -> s(x)."""

from __future__ import annotations

from fractions import Fraction

from src.domain.cycles import IntCycle, RatCycle
from src.domain.graph import ResolutionGraph
from src.domain.results import LauferReduction, LauferStep
from src.lattice.core import chi, form_values, require_dual
from src.utils.logger import get_logger

logger = get_logger("plumbline.lattice")


def _first_positive(values: list) -> int | None:
    for i, val in enumerate(values):
        if val > 0:
            return i
    return None


def _add_basis(g: ResolutionGraph, values: list, i: int) -> None:
    """Update (x, E_w) for all w after x += E_i."""
    values[i] += g.euler[i]
    for j in g.adjacency[i]:
        values[j] += 1


def laufer_zmin(g: ResolutionGraph) -> IntCycle:
    """Minimal nonzero element of S' cap L (the fundamental cycle)."""
    x = [1] * g.size
    values = [int(val) for val in form_values(g, x)]
    steps = 0
    while (i := _first_positive(values)) is not None:
        x[i] += 1
        _add_basis(g, values, i)
        steps += 1
    logger.debug("Laufer sequence for Z_min took %d steps", steps)
    return IntCycle(g.vertices, x)


def h1_zmin(g: ResolutionGraph) -> int:
    """h^1(O_{Z_min}) = 1 - chi(Z_min)."""
    return int(1 - chi(g, laufer_zmin(g)))


def laufer_reduce(g: ResolutionGraph, x: RatCycle) -> LauferReduction:
    """Generalized Laufer sequence: the least s(x) = x + l in S' with l >= 0.

    Every step adds one E_v with (x_i, E_v) > 0, and each such step changes chi
    by 1 - (x_i, E_v) <= 0.

    Raises:
        NotInDualLattice
    """
    require_dual(g, x)
    current = list(x.coeffs)
    values = list(form_values(g, x))
    l = [0] * g.size
    trace = [LauferStep(vertex="", chi=chi(g, current))]
    while (i := _first_positive(values)) is not None:
        step_chi = trace[-1].chi + 1 - values[i]
        current[i] += 1
        l[i] += 1
        _add_basis(g, values, i)
        trace.append(LauferStep(vertex=g.vertices[i], chi=Fraction(step_chi)))
    s_x = RatCycle.make(g.vertices, current)
    return LauferReduction(s_x=s_x, l=IntCycle(g.vertices, l), trace=trace)
