"""Cycle expressions used on the command line.

Either a comma list of coefficients in vertex order (``3,6,1,1,2``, entries may
be ``p/q``) or a sum of terms ``[k*]atom`` with atoms ``0``, ``E``, ``Zmin``,
``ZK``, ``E:<id>`` and ``E*:<id>``, e.g. ``-E*:v0`` or ``2*Zmin - E:a``.
Vertex ids inside atoms may not contain ``-``.
"""

from __future__ import annotations

import re

from src.domain.cycles import RatCycle
from src.domain.graph import ResolutionGraph
from src.errors import UnknownVertex
from src.lattice.core import (
    basis_cycle,
    canonical_cycle,
    dual_cycle,
    reduced_cycle,
    zero_cycle,
)
from src.lattice.laufer import laufer_zmin
from src.utils.rational import to_fraction

_NUMBER = r"\d+(?:/\d+)?"
_LIST_RE = re.compile(rf"^\s*-?{_NUMBER}(\s*,\s*-?{_NUMBER})*\s*$")
_TERM_RE = re.compile(
    rf"\s*([+-])?\s*(?:({_NUMBER})\s*\*\s*)?(E\*:[^\s+*-]+|E:[^\s+*-]+|Zmin|ZK|E|0)\s*"
)


def _atom(g: ResolutionGraph, atom: str) -> RatCycle:
    if atom == "0":
        return zero_cycle(g)
    if atom == "E":
        return reduced_cycle(g)
    if atom == "Zmin":
        return laufer_zmin(g)
    if atom == "ZK":
        return canonical_cycle(g)
    kind, vid = atom.split(":", 1)
    if vid not in g.index:
        raise UnknownVertex(f"unknown vertex '{vid}' in cycle expression")
    return dual_cycle(g, vid) if kind == "E*" else basis_cycle(g, vid)


def parse_cycle(g: ResolutionGraph, text: str) -> RatCycle:
    """Evaluate a cycle expression on `g`.

    Raises:
        ValueError: malformed expression or wrong number of coefficients
        UnknownVertex
    """
    text = text.strip()
    if _LIST_RE.match(text) and ("," in text or g.size == 1):
        values = [to_fraction(part.strip()) for part in text.split(",")]
        if len(values) != g.size:
            raise ValueError(f"cycle has {len(values)} coefficients for {g.size} vertices")
        return RatCycle.make(g.vertices, values)

    total = zero_cycle(g)
    pos = 0
    first = True
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse cycle expression {text!r} at position {pos}")
        sign, factor, atom = match.groups()
        if sign is None and not first:
            raise ValueError(f"missing '+' or '-' before {atom!r} in {text!r}")
        value = _atom(g, atom) * to_fraction(factor or 1)
        total = total - value if sign == "-" else total + value
        pos = match.end()
        first = False
    if first:
        raise ValueError("empty cycle expression")
    return total
