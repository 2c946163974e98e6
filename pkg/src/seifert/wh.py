"""Weighted-homogeneous (star-shaped) graphs.

Seifert data <-> graphs, Pinkham's p_g, the pole set W, the h^1 closed forms
for central and end orbits, and the s(l) recursion that measures the image
of the Abel map for the Chern class -E*_{v0}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from src.domain.graph import ResolutionGraph
from src.domain.seifert import SeifertData, WhForm, WhInvariants
from src.errors import BadRange, NotCoprime, NotNegativeDefinite, NotStarShaped, UnknownVertex
from src.lattice.dominance import complement_components, dim_V
from src.utils.logger import get_logger
from src.utils.rational import ceil_div, ceil_fraction

logger = get_logger("plumbline.seifert")

CENTER = "v0"


# =============================================================================
# CONTINUED FRACTIONS
# =============================================================================


def cont_frac(alpha: int, omega: int) -> list[int]:
    """Negative continued fraction alpha/omega = [b_1, ..., b_s], every b_i >= 2.

    Raises:
        BadRange, NotCoprime
    """
    SeifertData(b0=0, legs=((alpha, omega),))
    bs: list[int] = []
    a, w = alpha, omega
    while w:
        b = ceil_div(a, w)
        bs.append(b)
        a, w = w, b * w - a
    return bs


def cf_eval(bs: Sequence[int]) -> tuple[int, int]:
    """(alpha, omega) with alpha/omega = b_1 - 1/(b_2 - 1/(...)).

    Raises:
        BadRange: empty list or some b_i < 2
    """
    if not bs or any(b < 2 for b in bs):
        raise BadRange(f"continued fraction entries must be >= 2, got {list(bs)}")
    value = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        value = b - 1 / value
    return value.numerator, value.denominator


def leg_vertex(j: int, k: int) -> str:
    """Id of the k-th vertex (from the center) on leg j, both 1-based."""
    return f"v{j}_{k}"


def graph_from_seifert(sd: SeifertData, name: str = "") -> ResolutionGraph:
    """Star-shaped graph with center euler -b0 and one string per leg."""
    vertices = [CENTER]
    euler = [-sd.b0]
    edges: list[tuple[str, str]] = []
    for j, (alpha, omega) in enumerate(sd.legs, start=1):
        previous = CENTER
        for k, b in enumerate(cont_frac(alpha, omega), start=1):
            vid = leg_vertex(j, k)
            vertices.append(vid)
            euler.append(-b)
            edges.append((previous, vid))
            previous = vid
    return ResolutionGraph(
        vertices=tuple(vertices),
        euler=tuple(euler),
        edges=tuple(edges),
        name=name or sd.to_text(),
    )


def star_center(g: ResolutionGraph) -> str:
    """The unique vertex of degree >= 3.

    Raises:
        NotStarShaped
    """
    nodes = [v for v, d in zip(g.vertices, g.degrees) if d >= 3]
    if len(nodes) != 1:
        raise NotStarShaped(f"{len(nodes)} vertices of degree >= 3; need exactly one")
    return nodes[0]


def seifert_from_graph(g: ResolutionGraph) -> SeifertData:
    """Read Seifert data off a star-shaped graph; legs in the center's edge order.

    Raises:
        NotStarShaped, BadRange
    """
    center = star_center(g)
    c = g.index[center]
    legs = []
    for start in g.adjacency[c]:
        bs = []
        previous, current = c, start
        while current is not None:
            bs.append(-g.euler[current])
            following = [k for k in g.adjacency[current] if k != previous]
            previous, current = current, (following[0] if following else None)
        legs.append(cf_eval(bs))
    return SeifertData(b0=-g.euler[c], legs=tuple(legs))


def omega_prime_tau(sd: SeifertData) -> list[tuple[int, int]]:
    """(omega'_j, tau_j) with omega_j omega'_j - 1 = alpha_j tau_j, 0 < omega'_j < alpha_j."""
    pairs = []
    for alpha, omega in sd.legs:
        omega_prime = pow(omega, -1, alpha)
        pairs.append((omega_prime, (omega * omega_prime - 1) // alpha))
    return pairs


# =============================================================================
# PINKHAM DATA
# =============================================================================


def n_ell(sd: SeifertData, ell: int) -> int:
    """n_l = -b0 l - 2 + sum_j ceil(omega_j l / alpha_j)."""
    return -sd.b0 * ell - 2 + sum(ceil_div(omega * ell, alpha) for alpha, omega in sd.legs)


def ell_bound(sd: SeifertData) -> int:
    """n_l < e l + nu - 2, so n_l < 0 once l >= (nu - 2) / (-e)."""
    e = sd.orbifold_euler
    return max(0, ceil_fraction(Fraction(sd.nu - 2) / -e))


def wh_invariants(sd: SeifertData) -> WhInvariants:
    """n_l, W = {l : n_l >= 0} and p_g = sum_{l in W} (n_l + 1).

    Raises:
        NotNegativeDefinite: e >= 0
    """
    if sd.orbifold_euler >= 0:
        raise NotNegativeDefinite(f"orbifold Euler number {sd.orbifold_euler} is not negative")
    ell_max = ell_bound(sd)
    n = tuple(n_ell(sd, ell) for ell in range(ell_max + 1))
    W = tuple(ell for ell, value in enumerate(n) if value >= 0)
    pairs = omega_prime_tau(sd)
    logger.debug("Seifert %s: ell_max=%d W=%s", sd.to_text(), ell_max, W)
    return WhInvariants(
        n=n,
        ell_max=ell_max,
        W=W,
        pg=sum(n[ell] + 1 for ell in W),
        omega_prime=tuple(p for p, _ in pairs),
        tau=tuple(t for _, t in pairs),
    )


def wh_pg(sd: SeifertData) -> int:
    return wh_invariants(sd).pg


def default_points(sd: SeifertData) -> tuple[Fraction, ...]:
    return tuple(Fraction(j) for j in range(1, sd.nu + 1))


def check_points(sd: SeifertData, points: Sequence[Fraction] | None) -> tuple[Fraction, ...]:
    """Leg positions p_j on the central curve: distinct nonzero rationals.

    Raises:
        BadRange
    """
    if points is None:
        return default_points(sd)
    points = tuple(Fraction(p) for p in points)
    if len(points) != sd.nu:
        raise BadRange(f"need {sd.nu} leg points, got {len(points)}")
    if len(set(points)) != len(points) or Fraction(0) in points:
        raise BadRange("leg points must be distinct and nonzero")
    return points


def wh_form_basis(sd: SeifertData, points: Sequence[Fraction] | None = None) -> list[WhForm]:
    """The p_g forms u^{-l-1} prod_j (v - p_j)^{-m_j} v^n, l in W, 0 <= n <= n_l.

    m_j = ceil(omega_j l / alpha_j) is the largest exponent keeping the form
    holomorphic along leg j.
    """
    points = check_points(sd, points)
    inv = wh_invariants(sd)
    forms = []
    for ell in inv.W:
        m = tuple(ceil_div(omega * ell, alpha) for alpha, omega in sd.legs)
        forms.extend(WhForm(ell=ell, n=n, m=m, points=points) for n in range(inv.n[ell] + 1))
    return forms


# =============================================================================
# h^1 CLOSED FORMS
# =============================================================================


def h1_central(sd: SeifertData, k: int) -> int:
    """h^1(Z, O(-k E*_{v0})) for divisors on k generic central orbits.

    Raises:
        BadRange: k < 1
    """
    if k < 1:
        raise BadRange(f"k must be >= 1, got {k}")
    inv = wh_invariants(sd)
    return sum(max(0, inv.n[ell] + 1 - k) for ell in inv.W)


def _check_leg(sd: SeifertData, j: int) -> None:
    if not 1 <= j <= sd.nu:
        raise BadRange(f"leg index must be in 1..{sd.nu}, got {j}")


def end_pole_ells(sd: SeifertData, j: int) -> list[int]:
    """l in W whose forms keep a pole along an end orbit of leg j (1-based).

    The condition is alpha_j | omega_j l - 1 together with
    tau_j l - omega'_j ceil(omega_j l / alpha_j) + omega'_j - 1 < 0.

    Raises:
        BadRange
    """
    _check_leg(sd, j)
    inv = wh_invariants(sd)
    alpha, omega = sd.legs[j - 1]
    omega_prime, tau = inv.omega_prime[j - 1], inv.tau[j - 1]
    ells = []
    for ell in inv.W:
        if (omega * ell - 1) % alpha:
            continue
        exponent = tau * ell - omega_prime * ceil_div(omega * ell, alpha) + omega_prime - 1
        if exponent < 0:
            ells.append(ell)
    return ells


def h1_end(sd: SeifertData, j: int) -> int:
    """h^1(Z, O(-E*_{v_j})) for the end vertex of leg j: p_g minus independent relations.

    Every qualifying l contributes one relation; the relations live in
    disjoint blocks of forms, so they are independent.
    """
    return wh_pg(sd) - len(end_pole_ells(sd, j))


def h1_end_printed(sd: SeifertData, j: int) -> int:
    """p_g - (sum_{l in W} n_l) * #{qualifying l}, kept for comparison with h1_end."""
    inv = wh_invariants(sd)
    total_n = sum(inv.n[ell] for ell in inv.W)
    return inv.pg - total_n * len(end_pole_ells(sd, j))


# =============================================================================
# s-RECURSION AND THE CENTRAL ABEL MAP
# =============================================================================


def s_recursion(sd: SeifertData) -> tuple[tuple[int, ...], int]:
    """Table s(0..ell_max) and s(0), by decreasing induction from s(ell_max + 1) = 0."""
    inv = wh_invariants(sd)
    W = set(inv.W)
    table = [0] * (inv.ell_max + 2)
    for ell in range(inv.ell_max, -1, -1):
        if ell in W:
            table[ell] = table[ell + 1] + inv.n[ell]
        else:
            table[ell] = max(0, table[ell + 1] - 1)
    return tuple(table[: inv.ell_max + 1]), table[0]


def h1_generic_central(sd: SeifertData) -> int:
    """h^1(Z, O_Z(D)) for a generic divisor D with Chern class -E*_{v0}."""
    return s_recursion(sd)[1]


def dim_im_central(sd: SeifertData) -> int:
    return wh_pg(sd) - h1_generic_central(sd)


def is_dominant_central(sd: SeifertData) -> bool:
    return h1_generic_central(sd) == 0


def central_dominance_conditions(sd: SeifertData) -> dict[str, bool]:
    """s(0) <= p_g - #W, and four conditions that hold or fail together."""
    inv = wh_invariants(sd)
    table, s0 = s_recursion(sd)
    size_W = len(inv.W)
    return {
        "s0_at_most_pg_minus_W": s0 <= inv.pg - size_W,
        "s0_equals_pg_minus_W": s0 == inv.pg - size_W,
        "s_vanishes": all(s == 0 for s in table),
        "n_vanishes_on_W": all(inv.n[ell] == 0 for ell in inv.W),
        "pg_equals_W_and_s0_zero": inv.pg == size_W and s0 == 0,
    }


# =============================================================================
# dim V(I)
# =============================================================================


def component_pg(sub: ResolutionGraph) -> int | None:
    """p_g of a connected subgraph of a star: strings are rational, stars use Pinkham."""
    if max(sub.degrees, default=0) <= 2:
        return 0
    try:
        return wh_pg(seifert_from_graph(sub))
    except (NotStarShaped, BadRange, NotCoprime):
        return None


def dim_V_wh(sd: SeifertData, I: Iterable[str]) -> int:
    """dim V(I) on graph_from_seifert(sd) with Pinkham p_g for the complement.

    Raises:
        UnknownVertex, ComponentNotSupported
    """
    g = graph_from_seifert(sd)
    I = list(I)
    unknown = [v for v in I if v not in g.index]
    if unknown:
        raise UnknownVertex(f"unknown vertices {unknown}")
    comps = complement_components(g, I)
    pgs = [component_pg(g.induced(comp)) for comp in comps]
    return dim_V(g, I, wh_pg(sd), pgs)
