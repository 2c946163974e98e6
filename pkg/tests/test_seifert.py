"""Tests for Seifert graphs, Pinkham's p_g and the WH closed forms."""

from fractions import Fraction

import pytest

from src.domain.seifert import SeifertData, parse_seifert
from src.errors import BadRange, NotNegativeDefinite, NotStarShaped, UnknownVertex
from src.lattice.core import canonical_cycle, dual_cycle
from src.seifert.wh import (
    central_dominance_conditions,
    cf_eval,
    cont_frac,
    dim_im_central,
    dim_V_wh,
    end_pole_ells,
    graph_from_seifert,
    h1_central,
    h1_end,
    h1_end_printed,
    h1_generic_central,
    is_dominant_central,
    omega_prime_tau,
    s_recursion,
    seifert_from_graph,
    star_center,
    wh_form_basis,
    wh_invariants,
    wh_pg,
)
from src.services.corpus import get_graph

EX_445 = parse_seifert("b0=1 legs=5,1x4")
WHSING = parse_seifert("b0=4 legs=8,1x8")
ELLIPTIC = parse_seifert("b0=1 legs=2,1;3,1;7,1")


class TestContinuedFractions:
    def test_cont_frac(self):
        assert cont_frac(7, 3) == [3, 2, 2]
        assert cont_frac(5, 1) == [5]
        assert cont_frac(5, 4) == [2, 2, 2, 2]

    def test_cf_eval_inverts(self):
        for alpha, omega in [(7, 3), (5, 2), (9, 7), (2, 1)]:
            assert cf_eval(cont_frac(alpha, omega)) == (alpha, omega)

    def test_cf_eval_rejects_small_entries(self):
        with pytest.raises(BadRange):
            cf_eval([3, 1])
        with pytest.raises(BadRange):
            cf_eval([])

    def test_omega_prime_tau(self):
        sd = SeifertData(b0=2, legs=((7, 3),))
        assert omega_prime_tau(sd) == [(5, 2)]


class TestSeifertGraphs:
    def test_ex_445_graph(self):
        g = graph_from_seifert(EX_445)
        assert g.vertices == ("v0", "v1_1", "v2_1", "v3_1", "v4_1")
        assert g.euler == (-1, -5, -5, -5, -5)
        assert canonical_cycle(g).coeffs == (7, 2, 2, 2, 2)
        assert dual_cycle(g, "v0").coeffs == (5, 1, 1, 1, 1)

    def test_round_trip(self):
        sd = SeifertData(b0=2, legs=((3, 2), (5, 2), (7, 3)))
        assert seifert_from_graph(graph_from_seifert(sd)) == sd

    def test_corpus_graph_matches(self):
        assert get_graph("ex-whsing") == graph_from_seifert(WHSING, name=get_graph("ex-whsing").name)

    def test_star_center(self):
        assert star_center(graph_from_seifert(WHSING)) == "v0"
        with pytest.raises(NotStarShaped):
            star_center(get_graph("A3"))


class TestPinkham:
    def test_ex_445(self):
        inv = wh_invariants(EX_445)
        assert inv.pg == 4
        assert inv.W == (1, 2, 6)
        assert inv.ell_max == 10

    def test_whsing(self):
        inv = wh_invariants(WHSING)
        assert inv.pg == 3
        assert inv.W == (1,)

    def test_elliptic(self):
        assert wh_pg(ELLIPTIC) == 1
        assert ELLIPTIC.orbifold_euler == Fraction(-1, 42)

    def test_zero_euler_number(self):
        with pytest.raises(NotNegativeDefinite):
            wh_pg(parse_seifert("b0=1 legs=2,1;2,1"))

    def test_form_basis_size(self):
        forms = wh_form_basis(EX_445)
        assert len(forms) == 4
        assert sorted(f.ell + 1 for f in forms) == [2, 2, 3, 7]

    def test_form_basis_bad_points(self):
        with pytest.raises(BadRange):
            wh_form_basis(EX_445, points=[1, 2, 3])
        with pytest.raises(BadRange):
            wh_form_basis(EX_445, points=[0, 1, 2, 3])
        with pytest.raises(BadRange):
            wh_form_basis(EX_445, points=[1, 1, 2, 3])


class TestCentralAbelMap:
    def test_ex_445_is_dominant(self):
        _, s0 = s_recursion(EX_445)
        assert s0 == 0
        assert is_dominant_central(EX_445)
        assert dim_im_central(EX_445) == 4

    def test_whsing_is_not_dominant(self):
        assert h1_generic_central(WHSING) == 1
        assert dim_im_central(WHSING) == 2
        assert not is_dominant_central(WHSING)

    def test_dominance_conditions_ex_445(self):
        assert central_dominance_conditions(EX_445) == {
            "s0_at_most_pg_minus_W": True,
            "s0_equals_pg_minus_W": False,
            "s_vanishes": False,
            "n_vanishes_on_W": False,
            "pg_equals_W_and_s0_zero": False,
        }

    def test_dominance_conditions_whsing(self):
        conditions = central_dominance_conditions(WHSING)
        assert conditions.pop("s0_at_most_pg_minus_W")
        assert not any(conditions.values())

    def test_dominance_conditions_elliptic(self):
        assert all(central_dominance_conditions(ELLIPTIC).values())


class TestH1ClosedForms:
    def test_central(self):
        assert [h1_central(EX_445, k) for k in (1, 2)] == [1, 0]
        assert [h1_central(WHSING, k) for k in (1, 2, 3)] == [2, 1, 0]

    def test_central_rejects_zero(self):
        with pytest.raises(BadRange):
            h1_central(EX_445, 0)

    def test_end_ex_445(self):
        assert end_pole_ells(EX_445, 1) == [1, 6]
        assert h1_end(EX_445, 1) == 2
        assert h1_end_printed(EX_445, 1) == 2

    def test_end_whsing_differs_from_printed(self):
        assert end_pole_ells(WHSING, 3) == [1]
        assert h1_end(WHSING, 3) == 2
        assert h1_end_printed(WHSING, 3) == 1

    def test_end_bad_leg(self):
        with pytest.raises(BadRange):
            h1_end(EX_445, 5)


class TestDimV:
    def test_ex_445(self):
        assert dim_V_wh(EX_445, ["v0"]) == 4
        assert dim_V_wh(EX_445, ["v1_1"]) == 3
        assert dim_V_wh(EX_445, []) == 0

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            dim_V_wh(EX_445, ["v9_9"])
