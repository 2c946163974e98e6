"""Tests for graph parsing, validation and the intersection form."""

from fractions import Fraction

import pytest

from src.domain.cycles import IntCycle
from src.errors import (
    DuplicateVertex,
    GenusNonzero,
    GraphSyntaxError,
    NotATree,
    NotInDualLattice,
    NotNegativeDefinite,
    UnknownVertex,
)
from src.lattice.core import (
    canonical_cycle,
    chi,
    class_rep,
    discriminant,
    dual_cycle,
    e_star_coordinates,
    eca_nonempty,
    from_e_star,
    form_values,
    in_dual_lattice,
    in_lipman_cone,
    pairing,
    parse_graph,
)
from src.lattice.laufer import h1_zmin, laufer_reduce, laufer_zmin
from src.services.corpus import get_graph

DIMIM = """
# chain with a branch
vertex a -2
vertex b -1
vertex c -7
vertex d -2
vertex e -3
edge a b
edge b c
edge c d
edge b e
"""


class TestParseGraph:
    def test_parses_ex_dimim(self):
        g = parse_graph(DIMIM, name="dimim")
        assert g.vertices == ("a", "b", "c", "d", "e")
        assert g.euler == (-2, -1, -7, -2, -3)
        assert g.name == "dimim"

    def test_genus_token_zero_accepted(self):
        g = parse_graph("vertex a -2 0\n")
        assert g.size == 1

    def test_genus_nonzero(self):
        with pytest.raises(GenusNonzero):
            parse_graph("vertex a -2\ngenus a 1\n")

    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateVertex):
            parse_graph("vertex a -2\nvertex a -3\n")

    def test_unknown_vertex_in_edge(self):
        with pytest.raises(UnknownVertex):
            parse_graph("vertex a -2\nedge a b\n")

    def test_syntax_error(self):
        with pytest.raises(GraphSyntaxError):
            parse_graph("vertex a\n")
        with pytest.raises(GraphSyntaxError):
            parse_graph("vertex a minus-two\n")

    def test_cycle_is_not_a_tree(self):
        text = "vertex a -3\nvertex b -3\nvertex c -3\nedge a b\nedge b c\nedge c a\n"
        with pytest.raises(NotATree):
            parse_graph(text)

    def test_forest_is_not_a_tree(self):
        with pytest.raises(NotATree):
            parse_graph("vertex a -2\nvertex b -2\n")

    def test_not_negative_definite(self):
        with pytest.raises(NotNegativeDefinite):
            parse_graph("vertex a -1\nvertex b -1\nedge a b\n")

    def test_empty(self):
        with pytest.raises(GraphSyntaxError):
            parse_graph("# nothing\n")


class TestIntersectionForm:
    def test_ex_dimim_is_unimodular(self):
        assert discriminant(get_graph("ex-dimim")) == 1

    def test_ade_discriminants(self):
        assert discriminant(get_graph("A4")) == 5
        assert discriminant(get_graph("D5")) == 4
        assert discriminant(get_graph("E6")) == 3
        assert discriminant(get_graph("E7")) == 2
        assert discriminant(get_graph("E8")) == 1

    def test_dual_cycle_pairs_to_minus_delta(self):
        g = get_graph("ex-445")
        for v in g.vertices:
            values = form_values(g, dual_cycle(g, v))
            assert values == tuple(Fraction(-1 if w == v else 0) for w in g.vertices)

    def test_dual_base_of_dimim_end(self):
        g = get_graph("ex-dimim")
        assert dual_cycle(g, "d").coeffs == (3, 6, 1, 1, 2)
        assert dual_cycle(g, "a").coeffs == (20, 39, 6, 3, 13)

    def test_e_star_coordinates_round_trip(self):
        g = get_graph("ex-whsing")
        x = dual_cycle(g, "v0") * 3 + dual_cycle(g, "v2_1")
        assert from_e_star(g, e_star_coordinates(g, x)) == x

    def test_canonical_cycle_adjunction(self):
        g = get_graph("ex-notclosed-g2")
        zk = canonical_cycle(g)
        for v, e, value in zip(g.vertices, g.euler, form_values(g, zk)):
            assert value == e + 2, v

    def test_canonical_cycle_ex_dimim(self):
        g = get_graph("ex-dimim")
        assert canonical_cycle(g).coeffs == (4, 8, 2, 1, 3)

    def test_canonical_cycle_ex_445(self):
        g = get_graph("ex-445")
        assert canonical_cycle(g).coeffs == (7, 2, 2, 2, 2)

    def test_dual_lattice(self):
        g = get_graph("A1")
        half = dual_cycle(g, "v1")
        assert half.coeffs == (Fraction(1, 2),)
        assert in_dual_lattice(g, half)
        third = half * Fraction(2, 3)
        assert not in_dual_lattice(g, third)
        with pytest.raises(NotInDualLattice):
            class_rep(g, third)

    def test_class_rep(self):
        g = get_graph("A1")
        x = dual_cycle(g, "v1") * 3
        assert class_rep(g, x).coeffs == (Fraction(1, 2),)


class TestZmin:
    def test_ex_dimim(self):
        g = get_graph("ex-dimim")
        z = laufer_zmin(g)
        assert z.ints == (3, 6, 1, 1, 2)
        assert chi(g, z) == 0
        assert h1_zmin(g) == 1
        assert pairing(g, z, z) == -1

    def test_rational_double_points(self):
        assert laufer_zmin(get_graph("A3")).ints == (1, 1, 1)
        assert laufer_zmin(get_graph("D4")).ints == (1, 2, 1, 1)
        assert laufer_zmin(get_graph("E8")).ints == (2, 4, 6, 5, 4, 3, 2, 3)

    def test_zmin_is_in_lipman_cone(self):
        for name in ("ex-dimim", "ex-notclosed-g1", "ex-nonfibration", "ex-445", "elliptic-237"):
            g = get_graph(name)
            assert in_lipman_cone(g, laufer_zmin(g)), name

    def test_rational_chi_one(self):
        g = get_graph("E7")
        assert chi(g, laufer_zmin(g)) == 1

    def test_eca_nonempty(self):
        g = get_graph("ex-dimim")
        assert eca_nonempty(g, -dual_cycle(g, "a"))
        assert not eca_nonempty(g, dual_cycle(g, "a"))


class TestLauferReduce:
    def test_reaches_lipman_cone(self):
        g = get_graph("ex-dimim")
        x = IntCycle(g.vertices, [1, 0, 0, 0, 0])
        red = laufer_reduce(g, x)
        assert in_lipman_cone(g, red.s_x)
        assert red.s_x == x + red.l
        assert red.chi_change <= 0

    def test_zero_stays(self):
        g = get_graph("A2")
        red = laufer_reduce(g, IntCycle(g.vertices, [0, 0]))
        assert red.l.is_zero()
        assert red.chi_change == 0

    def test_from_basis_vector_gives_zmin(self):
        g = get_graph("E8")
        x = IntCycle(g.vertices, [1] + [0] * 7)
        assert laufer_reduce(g, x).s_x == laufer_zmin(g)
