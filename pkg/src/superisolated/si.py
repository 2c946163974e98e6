"""Superisolated germs F_d + F_{d+1} with F_{d+1} = -z^{d+1}.

The forms x^m dx/dF with |m| <= d - 3 span the p_g-dimensional space. In the
chart (u, v, w) with x = (uw, vw, w) the surface is w = G(u, v), so a cut
through a smooth point p of the curve is parametrized by t = w. The image of
the Abel map for k such cuts has the rank of the order-of-vanishing system
ord_t(sum_m a_m u^{m_1} v^{m_2} t^{|m|}) >= d - 2 along all cuts. That system
is block lower triangular, with the monomial evaluations of degree j at the
points on the diagonal.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from src.abel.chart import vanishing_constraint_rank
from src.abel.series import TruncSeries
from src.config import DEFAULT_CURVE_MODEL
from src.domain.curves import CurveModel, Point, SiInstance
from src.errors import BadRange, HypothesisViolated, InconsistentTruncation, TruncationInsufficient
from src.utils.logger import get_logger
from src.utils.rational import matrix_rank

logger = get_logger("plumbline.superisolated")


# =============================================================================
# CLOSED FORMS
# =============================================================================


def _check_degree(d: int) -> None:
    if d < 3:
        raise BadRange(f"d must be >= 3, got {d}")


def si_pg(d: int) -> int:
    _check_degree(d)
    return d * (d - 1) * (d - 2) // 6


def si_dim_im_generic(d: int, k: int) -> int:
    """sum_{j=0}^{d-3} min(k, C(j+2, 2)) for k generic cuts."""
    _check_degree(d)
    if k < 0:
        raise BadRange(f"k must be >= 0, got {k}")
    return sum(min(k, comb(j + 2, 2)) for j in range(d - 2))


def si_first_dominant(d: int) -> int:
    """The first k with si_dim_im_generic(d, k) = p_g."""
    _check_degree(d)
    return comb(d - 1, 2)


# =============================================================================
# INSTANCES
# =============================================================================


def curve_model(d: int, name: str | None = None) -> CurveModel:
    return CurveModel(name=name or DEFAULT_CURVE_MODEL, d=d)


def generic_instance(d: int, k: int, model: str | None = None) -> SiInstance:
    """Points at t = 1, ..., k.

    On the cusp model the degree-j evaluation matrix is a generalized
    Vandermonde matrix in positive t with distinct exponents, so every block
    has full rank.
    """
    curve = curve_model(d, model)
    return SiInstance(model=curve, points=tuple(curve.points(range(1, k + 1))))


def _require_odd(d: int, minimum: int) -> None:
    if d < minimum or d % 2 == 0:
        raise BadRange(f"needs an odd degree >= {minimum}, got {d}")


def collinear_instance(d: int = 5) -> SiInstance:
    """Three collinear points on the sheared model: t = 2, t = -2 and (0, 1).

    The line through (0, 1) and the point at t has slope t^(d-1), which
    takes the same value at +-t for odd d.
    """
    _require_odd(d, 5)
    curve = curve_model(d, "sheared")
    points = curve.points([2, -2]) + [(0, 1)]
    return SiInstance(model=curve, points=tuple(points))


def conic_instance(d: int = 5) -> SiInstance:
    """Six points t = +-1, +-2, +-3 on the cusp model.

    For odd d they pair up as (a, b), (a, -b), and three such pairs lie on a
    conic alpha u^2 + beta u + gamma v^2 + delta = 0.
    """
    _require_odd(d, 5)
    curve = curve_model(d, "cusp")
    return SiInstance(model=curve, points=tuple(curve.points([1, -1, 2, -2, 3, -3])))


# =============================================================================
# RANKS
# =============================================================================


def _monomials(j: int) -> list[tuple[int, int]]:
    """u^a v^b with a + b <= j, by degree."""
    return [(a, total - a) for total in range(j + 1) for a in range(total, -1, -1)]


def _form_monomials(d: int) -> list[tuple[int, int, int]]:
    """x^m with |m| <= d - 3, by degree."""
    return [
        (m1, m2, total - m1 - m2)
        for total in range(d - 2)
        for m1 in range(total, -1, -1)
        for m2 in range(total - m1, -1, -1)
    ]


def monomial_eval_rank(points: Sequence[Point], j: int) -> int:
    """Rank of the evaluation of all u^a v^b with a + b <= j at the points."""
    if j < 0:
        raise BadRange(f"j must be >= 0, got {j}")
    if not points:
        return 0
    rows = [[u**a * v**b for a, b in _monomials(j)] for u, v in points]
    return matrix_rank(rows)


def block_ranks(instance: SiInstance) -> list[int]:
    """Ranks of the diagonal blocks j = 0..d-3."""
    return [monomial_eval_rank(instance.points, j) for j in range(instance.d - 2)]


def si_dim_im_points(instance: SiInstance, fallback: bool = False) -> int:
    """Sum of the diagonal block ranks.

    Exact when at most one block j0 loses rank and k > C(j0 + 1, 2), since
    every earlier block then has full column rank. Other configurations
    raise, or with `fallback` go to si_constraint_rank.

    Raises:
        HypothesisViolated
    """
    k = instance.k
    ranks = block_ranks(instance)
    degenerate = [j for j, r in enumerate(ranks) if r < min(k, comb(j + 2, 2))]
    valid = not degenerate or (len(degenerate) == 1 and k > comb(degenerate[0] + 1, 2))
    if not valid:
        message = f"degenerate blocks {degenerate} for k = {k}"
        if not fallback:
            raise HypothesisViolated(message)
        logger.warning("%s; using the full constraint rank", message)
        return si_constraint_rank(instance)[0]
    if degenerate:
        logger.debug("block %d drops to rank %d", degenerate[0], ranks[degenerate[0]])
    return sum(ranks)


def _cut_series(curve: CurveModel, point: Point, order: int) -> tuple[TruncSeries, TruncSeries]:
    """u(t), v(t) along the line p + s grad G(p), where t = G(p + s grad G(p))."""
    gu, gv = curve.gradient(point)
    u0, v0 = point
    u_s = TruncSeries.polynomial("s", [u0, gu])
    v_s = TruncSeries.polynomial("s", [v0, gv])
    restricted = TruncSeries.constant(("s",), 0)
    for (a, b), c in curve.equation.items():
        restricted = restricted + (u_s**a * v_s**b).scale(c)
    top = max(e[0] for e in restricted.terms)
    A = [restricted.coeff((k,)) for k in range(top + 1)]
    if A[0] or not A[1]:
        raise BadRange(f"point {point} is not a smooth point of the curve")

    t = TruncSeries.polynomial("t", [0, 1], order=order)
    s = t.scale(1 / A[1])
    for _ in range(order):
        acc = t
        power = s
        for k in range(2, top + 1):
            power = power * s
            acc = acc - power.scale(A[k])
        s = acc.scale(1 / A[1])
    return s.scale(gu) + u0, s.scale(gv) + v0


def si_constraint_rank(instance: SiInstance, truncation: int | None = None) -> tuple[int, int]:
    """(rank, h1) of the full order-of-vanishing system, h1 = p_g - rank.

    Raises:
        TruncationInsufficient: cut series known below less than d - 2
    """
    d = instance.d
    pg = si_pg(d)
    if instance.k == 0:
        return 0, pg
    target = d - 2
    order = truncation if truncation is not None else target
    columns = []
    for point in instance.points:
        u_t, v_t = _cut_series(instance.model, point, order)
        t = TruncSeries.polynomial("t", [0, 1], order=order)
        columns.append(
            [u_t**m1 * v_t**m2 * t ** (m1 + m2 + m3) for m1, m2, m3 in _form_monomials(d)]
        )
    try:
        rank = vanishing_constraint_rank(columns, target)
    except InconsistentTruncation as e:
        raise TruncationInsufficient(
            f"cut parametrizations known to order {order}, need {target}"
        ) from e
    return rank, pg - rank

