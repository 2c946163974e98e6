"""Abel map in a local chart.

Near a point of the central curve the chart has coordinates (u, v) with the
curve at u = 0. A divisor cut is v = c(u) = c_0 + c_1 u + ..., and a form is
u^{-l-1} f(v) dv ^ du with f regular at c_0. The pairing of the cut with the
form is

    sum_{i=1}^{l} delta_{l,i}(c) f^{(i-1)}(c_0) / (i-1)!,
    delta_{n,i}(c) = -(1/i) [u^n] (c_1 u + c_2 u^2 + ...)^i,

up to a global nonzero constant that is dropped everywhere. Pole-freeness of
the Leray residue f(c(u)) u^{-l-1} along each cut gives the linear conditions
whose rank is the image dimension of the Abel map.
"""

from __future__ import annotations

import random
from math import comb
from typing import Sequence

from sympy import symbols
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.abel.series import TruncSeries
from src.config import PARAMETER_PREFIX, SYMBOLIC_VARIABLE_CAP, get_seed
from src.domain.chart import Cut, DivisorChart, RationalForm
from src.domain.seifert import SeifertData
from src.errors import PoleAtEvaluationPoint
from src.seifert.wh import check_points, end_pole_ells, wh_form_basis
from src.utils.logger import get_logger
from src.utils.rational import matrix_rank, random_rational, to_domain

logger = get_logger("plumbline.abel")


# =============================================================================
# FIELDS
# =============================================================================


def parameter_field(d: int):
    """QQ(c0, ..., c_{d-1}) and its generators for symbolic mode.

    Raises:
        ValueError: more parameters than SYMBOLIC_VARIABLE_CAP
    """
    if not 1 <= d <= SYMBOLIC_VARIABLE_CAP:
        raise ValueError(f"symbolic mode supports 1..{SYMBOLIC_VARIABLE_CAP} parameters, got {d}")
    gens = symbols(f"{PARAMETER_PREFIX}0:{d}")
    field = QQ.frac_field(*gens)
    return field, [field.convert(g) for g in gens]


def _convert_all(values: Sequence, domain) -> list:
    return [to_domain(x, domain) for x in values]


# =============================================================================
# DELTA POLYNOMIALS
# =============================================================================


def delta_poly(n: int, i: int, c: Sequence, domain=QQ):
    """delta_{n,i}(c) = -(1/i) [u^n] (c_1 u + c_2 u^2 + ...)^i.

    c[0] is c_0 and does not enter.
    """
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"need n >= 1 and 1 <= i <= n, got n={n}, i={i}")
    c = _convert_all(c, domain)
    tail = [domain.zero] + [c[k] if k < len(c) else domain.zero for k in range(1, n + 1)]
    W = TruncSeries.polynomial("u", tail, domain, order=n + 1)
    return -(W**i).coeff((n,)) / domain.convert(i)


def delta_poly_det(n: int, c: Sequence, domain=QQ) -> list:
    """[delta_{n,1}, ..., delta_{n,n}] from a Newton-identity determinant.

    The n x n matrix has k c_k x in the first column, c_{r-c+1} x below the
    diagonal and on it from the second column on, -1 above the diagonal. Its
    determinant is the n-th power sum, and sum_i delta_{n,i} x^i = -det / n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c = _convert_all(c, domain)
    cs = [c[k] if k < len(c) else domain.zero for k in range(n + 1)]
    R = domain.poly_ring(symbols("x"))
    x = R.gens[0]
    rows = []
    for r in range(n):
        row = []
        for col in range(n):
            if col == 0:
                row.append(x * cs[r + 1] * (r + 1))
            elif r >= col:
                row.append(x * cs[r - col + 1])
            elif r == col - 1:
                row.append(-R.one)
            else:
                row.append(R.zero)
        rows.append(row)
    det = DomainMatrix(rows, (n, n), R).det()
    scale = -1 / domain.convert(n)
    return [domain.convert(det.get((i,), domain.zero)) * scale for i in range(1, n + 1)]


# =============================================================================
# FORMS ALONG CUTS
# =============================================================================


def _numerator_taylor(numerator: Sequence, c0, K: int, domain) -> list:
    """Taylor coefficients of N(c_0 + s) up to s^{K-1}."""
    coeffs = _convert_all(numerator, domain)
    out = []
    for k in range(K):
        total = domain.zero
        for j in range(k, len(coeffs)):
            if coeffs[j]:
                total += coeffs[j] * comb(j, k) * c0 ** (j - k)
        out.append(total)
    return out


def _denominator_taylor(poles: Sequence, c0, K: int, domain) -> list:
    """Taylor coefficients of prod_j (c_0 + s - p_j)^{-m_j} by logarithmic differentiation.

    Raises:
        PoleAtEvaluationPoint
    """
    shifts = []
    for p, m in poles:
        a = c0 - to_domain(p, domain)
        if not a:
            raise PoleAtEvaluationPoint(f"the cut passes through the pole v = {p}")
        shifts.append((a, m))
    T = [domain.one]
    for a, m in shifts:
        T[0] = T[0] / a**m
    # h = D'/D = sum_j -m_j / (c_0 - p_j + s)
    H = []
    for k in range(K):
        sign = -1 if k % 2 else 1
        H.append(sum((-m * sign / a ** (k + 1) for a, m in shifts), domain.zero))
    for k in range(K - 1):
        total = sum((T[i] * H[k - i] for i in range(k + 1)), domain.zero)
        T.append(total / domain.convert(k + 1))
    return T[:K]


def form_taylor(form: RationalForm, c0, K: int, domain=QQ) -> list:
    """f^{(k)}(c_0) / k! for k < K."""
    c0 = to_domain(c0, domain)
    B = _numerator_taylor(form.numerator, c0, K, domain)
    T = _denominator_taylor(form.poles, c0, K, domain)
    return [sum((B[i] * T[k - i] for i in range(k + 1)), domain.zero) for k in range(K)]


def pairing_coord(form: RationalForm, cut: Cut, domain=QQ):
    """<cut, form> by the delta-polynomial formula; zero when the form has no pole.

    Raises:
        PoleAtEvaluationPoint
    """
    ell = form.ell
    if ell <= 0:
        return domain.zero
    c = _convert_all(cut.c, domain)
    F = form_taylor(form, c[0], ell, domain)
    return sum((delta_poly(ell, i, c, domain) * F[i - 1] for i in range(1, ell + 1)), domain.zero)


def pairing_coord_oracle(form: RationalForm, cut: Cut, domain=QQ):
    """The same pairing read off a two-variable Laurent product.

    Multiplies -sum_{i<=l} (1/i) W(u)^i s^{-i}, W = c(u) - c_0, with the
    Taylor series of f(c_0 + s) built by series inversion, and returns the
    coefficient of u^l s^{-1}.
    """
    ell = form.ell
    if ell <= 0:
        return domain.zero
    c = _convert_all(cut.c, domain)
    names = ("u", "s")
    tail = [domain.zero] + [c[k] if k < len(c) else domain.zero for k in range(1, ell + 1)]
    W = TruncSeries(names, {(k, 0): v for k, v in enumerate(tail)}, (ell + 1, None), domain)
    log_part = TruncSeries(names, {}, (ell + 1, None), domain)
    power = TruncSeries.constant(names, 1, domain)
    for i in range(1, ell + 1):
        power = power * W
        shift = TruncSeries(names, {(0, -i): -1 / domain.convert(i)}, None, domain)
        log_part = log_part + power * shift

    s = TruncSeries.polynomial("s", [c[0], domain.one], domain)
    F = TruncSeries.constant(("s",), 0, domain)
    for j, coefficient in enumerate(_convert_all(form.numerator, domain)):
        if coefficient:
            F = F + (s**j).scale(coefficient)
    F = F.truncate((ell,))
    for p, m in form.poles:
        shifted = s - to_domain(p, domain)
        if not shifted.coeff((0,)):
            raise PoleAtEvaluationPoint(f"the cut passes through the pole v = {p}")
        F = F * shifted.inverse(order=ell) ** m
    lifted = TruncSeries(names, {(0, e[0]): v for e, v in F.terms.items()}, (None, F.orders[0]), domain)
    return (log_part * lifted).coeff((ell, -1))


def abel_map_chart(forms: Sequence[RationalForm], D: DivisorChart, domain=QQ) -> list:
    """Coordinates of the divisor D against each form, additive over cuts."""
    coords = []
    for form in forms:
        total = domain.zero
        for cut in D.cuts:
            total += pairing_coord(form, cut, domain) * cut.multiplicity
        coords.append(total)
    return coords


def form_along_cut(form: RationalForm, cut: Cut, order: int, domain=QQ) -> TruncSeries:
    """f(c(u)) as a power series in u known below `order`.

    Raises:
        PoleAtEvaluationPoint
    """
    c = TruncSeries.polynomial("u", _convert_all(cut.c, domain), domain)
    result = TruncSeries.constant(("u",), 0, domain)
    for j, coefficient in enumerate(_convert_all(form.numerator, domain)):
        if coefficient:
            result = result + (c**j).scale(coefficient)
    result = result.truncate((order,))
    for p, m in form.poles:
        shifted = c - to_domain(p, domain)
        if not shifted.coeff((0,)):
            raise PoleAtEvaluationPoint(f"the cut passes through the pole v = {p}")
        result = result * shifted.inverse(order=order) ** m
    return result


def tangent_coord(form: RationalForm, cut: Cut, o: int, domain=QQ):
    """Coefficient of u^{-o} in the Leray residue f(c(u)) u^{-l-1} du.

    Moving c_{o-1} with speed 1 changes pairing_coord by minus this value.
    """
    if o < 1:
        raise ValueError("o must be >= 1")
    k = form.ell + 1 - o
    if k < 0:
        return domain.zero
    return form_along_cut(form, cut, k + 1, domain).coeff((k,))


# =============================================================================
# CONSTRAINT RANKS
# =============================================================================


def residue_rows(forms: Sequence[RationalForm], cuts: Sequence[Cut], domain=QQ) -> list[list]:
    """One row per cut and pole order r >= 1: the u^{-r} coefficients of the residues."""
    if not forms:
        return []
    top = max(form.ell for form in forms)
    rows = []
    for cut in cuts:
        along = [form_along_cut(form, cut, top + 1, domain) for form in forms]
        for r in range(1, top + 2):
            row = []
            for form, series in zip(forms, along):
                k = form.ell + 1 - r
                row.append(series.coeff((k,)) if k >= 0 else domain.zero)
            rows.append(row)
    return rows


def residue_constraint_rank(
    forms: Sequence[RationalForm], cuts: Sequence[Cut], domain=QQ
) -> tuple[int, int]:
    """(rank, h1): independent pole-freeness conditions and the forms they leave."""
    if not forms:
        return 0, 0
    rank = matrix_rank(residue_rows(forms, cuts, domain), domain)
    logger.debug("residue system: %d forms, %d cuts, rank %d", len(forms), len(cuts), rank)
    return rank, len(forms) - rank


def vanishing_constraint_rank(columns: Sequence[Sequence[TruncSeries]], order: int, domain=QQ) -> int:
    """Rank of ord_t(sum_a x_a g_{a,i}) >= order over all cuts i.

    `columns[i][a]` is the univariate series g_{a,i}(t) of form a along cut i.

    Raises:
        InconsistentTruncation: some series is known below less than `order`
    """
    rows = []
    for per_cut in columns:
        for e in range(order):
            rows.append([series.coeff((e,)) for series in per_cut])
    if not rows or not rows[0]:
        return 0
    return matrix_rank(rows, domain)


# =============================================================================
# WEIGHTED-HOMOGENEOUS INSTANCES
# =============================================================================


def wh_chart_forms(sd: SeifertData, points: Sequence | None = None) -> list[RationalForm]:
    return [RationalForm.from_wh(form) for form in wh_form_basis(sd, points)]


def jet_cut_rank(
    sd: SeifertData,
    c: Sequence | None = None,
    points: Sequence | None = None,
    seed: int | None = None,
) -> tuple[int, int]:
    """Residue rank for one cut v = c(u) through a generic central point.

    Without `c` the jet c_0, ..., c_{max l} is drawn at random.
    """
    points = check_points(sd, points)
    forms = wh_chart_forms(sd, points)
    if not forms:
        return 0, 0
    if c is None:
        rng = random.Random(get_seed(seed))
        top = max(form.ell for form in forms)
        c = [random_rational(rng, avoid=points)] + [random_rational(rng) for _ in range(top)]
    return residue_constraint_rank(forms, [Cut(c=tuple(c))], QQ)


def central_point_rank(
    sd: SeifertData,
    k: int,
    qs: Sequence | None = None,
    points: Sequence | None = None,
    seed: int | None = None,
) -> tuple[int, int]:
    """Residue rank for k cuts v = q_i along distinct central orbits."""
    points = check_points(sd, points)
    if qs is None:
        rng = random.Random(get_seed(seed))
        chosen: list = []
        for _ in range(k):
            chosen.append(random_rational(rng, avoid=list(points) + chosen))
        qs = chosen
    if len(set(qs)) != len(qs):
        raise ValueError("central cuts must be distinct")
    cuts = [Cut(c=(q,)) for q in qs]
    return residue_constraint_rank(wh_chart_forms(sd, points), cuts, QQ)


def end_residue_rank(sd: SeifertData, j: int, points: Sequence | None = None) -> tuple[int, int]:
    """Residue rank along an end orbit of leg j (1-based).

    Rows are the l whose forms keep a pole along the end curve; the entry at a
    form with the same l is the rest of its f, v^n prod_{j' != j} (v - p_j')^{-m_j'},
    evaluated at v = p_j. Other entries vanish.
    """
    points = check_points(sd, points)
    forms = wh_form_basis(sd, points)
    if not forms:
        return 0, 0
    p = points[j - 1]
    rows = []
    for ell in end_pole_ells(sd, j):
        row = []
        for form in forms:
            if form.ell != ell:
                row.append(0)
                continue
            value = p**form.n
            for k, (q, m) in enumerate(zip(points, form.m)):
                if k != j - 1:
                    value /= (p - q) ** m
            row.append(value)
        rows.append(row)
    rank = matrix_rank(rows) if rows else 0
    return rank, len(forms) - rank


# =============================================================================
# THE JET DETERMINANT
# =============================================================================


def det_Mc(m: int):
    """det of the m x m matrix whose n-th column lists [u^0..u^{m-1}] (sum_k c_k u^k)^{n-1}.

    Equals c_1^{m(m-1)/2}.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    gens = symbols(f"{PARAMETER_PREFIX}0:{max(m, 2)}")
    R = ZZ.poly_ring(*gens)
    c = TruncSeries.polynomial("u", list(R.gens[:m]), R, order=m)
    columns = []
    power = TruncSeries.constant(("u",), 1, R)
    for _ in range(m):
        columns.append(power.coefficients(0, 0, m))
        power = (power * c).truncate((m,))
    rows = [[columns[col][row] for col in range(m)] for row in range(m)]
    return R.to_sympy(DomainMatrix(rows, (m, m), R).det())


# =============================================================================
# SYMBOLIC IMAGE
# =============================================================================


def symbolic_chart_coordinates(
    sd: SeifertData, jet_length: int = 2, points: Sequence | None = None
) -> tuple[object, list]:
    """Abel coordinates of one cut v = c0 + c1 u + ... with symbolic coefficients.

    Returns the fraction field and one coordinate per form of wh_form_basis.
    """
    field, gens = parameter_field(jet_length)
    forms = wh_chart_forms(sd, points)
    D = DivisorChart(cuts=(Cut(c=tuple(gens)),))
    return field, abel_map_chart(forms, D, field)


def consecutive_ratios(sd: SeifertData, jet_length: int = 2, points: Sequence | None = None) -> list[dict]:
    """X_{n+1} / X_n for consecutive forms sharing the same l."""
    field, coords = symbolic_chart_coordinates(sd, jet_length, points)
    forms = wh_form_basis(sd, points)
    ratios = []
    for k in range(len(forms) - 1):
        a, b = forms[k], forms[k + 1]
        if a.ell != b.ell or not coords[k]:
            continue
        ratios.append({"ell": a.ell, "n": a.n, "ratio": field.to_sympy(coords[k + 1] / coords[k])})
    return ratios
