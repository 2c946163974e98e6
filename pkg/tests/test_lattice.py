"""Tests for chi minimization, dominance and the semigroup tests."""

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

import pytest

from src.config import MAX_EXHAUSTIVE_VOLUME
from src.domain.cycles import IntCycle
from src.errors import ComponentNotSupported, EcaEmpty, NonEffectiveZ
from src.lattice.core import (
    basis_cycle,
    canonical_cycle,
    chi,
    dual_cycle,
    form_values,
    in_lipman_cone,
    reduced_cycle,
    restrict,
    zero_cycle,
)
from src.lattice.dominance import (
    _level,
    complement_components,
    dim_V,
    dim_V_from_h1,
    generic_h0,
    generic_h1,
    h1_bounds,
    h1_vanishing,
    in_sdom,
    in_van,
    is_dominant,
    is_elliptic,
    is_rational,
    l_dom,
    min_chi_positive,
    spt_generators,
    structure_coh_cycle,
)
from src.lattice.laufer import laufer_reduce, laufer_zmin
from src.lattice.minimize import (
    ChiQuadratic,
    coh_cycle,
    coh_cycle_orthant,
    min_chi_box,
    min_chi_box_exhaustive,
    min_chi_orthant,
)
from src.services.corpus import get_graph, list_entries

SEMIGROUP_GRAPHS = ("A3", "D5", "E6", "elliptic-237", "ex-dimim", "ex-445", "ex-nonfibration")
PAIRS_PER_GRAPH = 15


def dimim_cherns(g):
    yield zero_cycle(g)
    for v in g.vertices:
        yield -dual_cycle(g, v)
    yield -dual_cycle(g, "a") - dual_cycle(g, "e")
    yield -2 * dual_cycle(g, "c")


def sample_lipman(g, rng):
    """sum k_v E*_v with small random k_v >= 0, an element of S'."""
    total = zero_cycle(g)
    for v in g.vertices:
        total = total + dual_cycle(g, v) * rng.choice((0, 0, 1, 2))
    return total


def sample_lattice(g, rng, low=-1, high=1):
    return IntCycle(g.vertices, [rng.randint(low, high) for _ in g.vertices])


@lru_cache(maxsize=None)
def membership(g, cycle):
    """(cycle in S'_dom, cycle in Van'); both tests take the Chern class -cycle."""
    return in_sdom(g, -cycle), in_van(g, -cycle)


@lru_cache(maxsize=None)
def semigroup_samples():
    """Seeded (g, x, y, z, w): x, y in S' of one class; z, w in L' of one class."""
    samples = []
    for name in SEMIGROUP_GRAPHS:
        g = get_graph(name)
        rng = random.Random(f"semigroups:{name}")
        zero = zero_cycle(g)
        samples.append((g, zero, laufer_zmin(g), zero, basis_cycle(g, g.vertices[0])))
        for _ in range(PAIRS_PER_GRAPH):
            x = sample_lipman(g, rng)
            y = laufer_reduce(g, x + sample_lattice(g, rng, -2, 2)).s_x
            z = x + sample_lattice(g, rng)
            w = z + sample_lattice(g, rng)
            samples.append((g, x, y, z, w))
    return tuple(samples)


def lipman_points(g, cap):
    """Nonzero l in L with 0 <= l_v <= cap and (l, E_v) <= 0 for every v."""
    rows = g.matrix
    for point in itertools.product(range(cap + 1), repeat=g.size):
        if any(point) and all(sum(a * b for a, b in zip(row, point)) <= 0 for row in rows):
            yield point


class TestChiQuadratic:
    def test_value_matches_chi(self):
        g = get_graph("ex-dimim")
        base = -dual_cycle(g, "a")
        quad = ChiQuadratic.build(g, base)
        for point in [(0, 0, 0, 0, 0), (1, 2, 0, 1, 0), (3, 6, 1, 1, 2), (0, 1, 4, 0, 2)]:
            shifted = base + IntCycle(g.vertices, point)
            assert quad.value(point) == chi(g, shifted), point

    def test_center_value_is_a_lower_bound(self):
        g = get_graph("ex-445")
        quad = ChiQuadratic.build(g, zero_cycle(g))
        for point in [(0, 0, 0, 0, 0), (1, 1, 1, 1, 1), (2, 0, 1, 0, 0)]:
            assert quad.value(point) >= quad.center_value()


class TestMinimization:
    def test_pruned_matches_exhaustive_ex_dimim(self):
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g)
        for chern in dimim_cherns(g):
            fast = min_chi_box(g, chern, Z)
            slow = min_chi_box_exhaustive(g, chern, Z)
            assert fast.min_value == slow.min_value
            assert fast.minimal_minimizer == slow.minimal_minimizer
            assert fast.minimizer_count == slow.minimizer_count

    def test_pruned_matches_exhaustive_e8(self):
        g = get_graph("E8")
        Z = laufer_zmin(g)
        for chern in (zero_cycle(g), -dual_cycle(g, "v1")):
            fast = min_chi_box(g, chern, Z)
            slow = min_chi_box_exhaustive(g, chern, Z)
            assert fast.min_value == slow.min_value
            assert fast.minimal_minimizer == slow.minimal_minimizer

    def test_larger_box(self):
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g) * 2
        chern = -dual_cycle(g, "d")
        assert min_chi_box(g, chern, Z).min_value == min_chi_box_exhaustive(g, chern, Z).min_value

    def test_rejects_zero_box(self):
        g = get_graph("A2")
        with pytest.raises(NonEffectiveZ):
            min_chi_box(g, zero_cycle(g), IntCycle(g.vertices, [0, 0]))

    def test_rejects_negative_box(self):
        g = get_graph("A2")
        with pytest.raises(NonEffectiveZ):
            min_chi_box(g, zero_cycle(g), IntCycle(g.vertices, [1, -1]))

    def test_exhaustive_volume_cap(self):
        g = get_graph("A2")
        with pytest.raises(ValueError):
            min_chi_box_exhaustive(g, zero_cycle(g), IntCycle(g.vertices, [2000, 2000]))

    def test_orthant_a1(self):
        g = get_graph("A1")
        result = min_chi_orthant(g, zero_cycle(g))
        assert result.min_value == 0
        assert result.minimal_minimizer.is_zero()
        assert result.minimizer_count == 1

    def test_coh_cycle_lies_in_box(self):
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g)
        coh = coh_cycle(g, zero_cycle(g), Z)
        assert coh.is_effective()
        assert coh <= Z


class TestDominance:
    def test_dominant_implies_no_generic_h1(self):
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g)
        for chern in dimim_cherns(g):
            h1 = generic_h1(g, chern, Z)
            assert h1 >= 0
            if is_dominant(g, chern, Z):
                assert h1 == 0

    def test_rational_graph_is_dominant_at_zero(self):
        g = get_graph("E8")
        Z = laufer_zmin(g)
        assert is_dominant(g, zero_cycle(g), Z)
        assert generic_h1(g, zero_cycle(g), Z) == 0
        assert h1_vanishing(g, Z)

    def test_generic_h0_of_trivial_bundle(self):
        # h^0(O_Z) = chi(Z) + h^1(O_Z)
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g)
        zero = zero_cycle(g)
        assert generic_h0(g, zero, Z) == chi(g, Z) + generic_h1(g, zero, Z)

    def test_eca_empty(self):
        g = get_graph("ex-dimim")
        with pytest.raises(EcaEmpty):
            is_dominant(g, dual_cycle(g, "a"), laufer_zmin(g))

    def test_h1_bounds(self):
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g)
        chern = -dual_cycle(g, "d")
        bounds = h1_bounds(g, chern, Z)
        assert bounds.lower == generic_h1(g, chern, Z)
        assert bounds.lower <= bounds.upper
        assert not bounds.h1_OZ_supplied
        assert bounds.notes

    def test_h1_bounds_supplied(self):
        g = get_graph("ex-dimim")
        Z = laufer_zmin(g)
        bounds = h1_bounds(g, zero_cycle(g), Z, h1_OZ=1)
        assert bounds.h1_OZ == 1
        assert bounds.h1_OZ_supplied
        assert bounds.upper == 1 + bounds.lower

    def test_spt_generators_of_rational_graph(self):
        g = get_graph("E8")
        assert spt_generators(g, laufer_zmin(g)) == set(g.vertices)


class TestSemigroups:
    def test_rational(self):
        assert is_rational(get_graph("E8"))
        assert is_rational(get_graph("D5"))
        assert not is_rational(get_graph("elliptic-237"))
        assert not is_rational(get_graph("ex-dimim"))

    def test_elliptic(self):
        assert is_elliptic(get_graph("elliptic-237"))
        assert not is_elliptic(get_graph("E6"))

    def test_min_chi_positive(self):
        assert min_chi_positive(get_graph("E7")) == 1
        assert min_chi_positive(get_graph("elliptic-237")) == 0

    def test_van_but_not_sdom_at_zero(self):
        g = get_graph("elliptic-237")
        assert in_van(g, zero_cycle(g))
        assert not in_sdom(g, zero_cycle(g))

    def test_a1_dual_generator(self):
        g = get_graph("A1")
        assert in_sdom(g, -dual_cycle(g, "v1"))
        assert in_van(g, -dual_cycle(g, "v1"))

    def test_sdom_implies_van(self):
        g = get_graph("ex-dimim")
        for chern in dimim_cherns(g):
            if in_sdom(g, chern):
                assert in_van(g, chern)

    def test_l_dom_rational(self):
        g = get_graph("E8")
        assert l_dom(g, zero_cycle(g)).is_zero()

    def test_l_dom_lands_in_sdom(self):
        g = get_graph("elliptic-237")
        l = l_dom(g, zero_cycle(g))
        assert not l.is_zero()
        assert in_sdom(g, -l)


class TestDimV:
    def test_complement_components(self):
        g = get_graph("ex-dimim")
        assert complement_components(g, ["b"]) == [("a",), ("c", "d"), ("e",)]

    def test_dim_v(self):
        g = get_graph("ex-dimim")
        assert dim_V(g, ["b"], 1, [0, 0, 0]) == 1
        assert dim_V(g, [], 1, [1]) == 0

    def test_missing_component(self):
        g = get_graph("ex-dimim")
        with pytest.raises(ComponentNotSupported):
            dim_V(g, ["b"], 1, [0, None, 0])
        with pytest.raises(ComponentNotSupported):
            dim_V(g, ["b"], 1, [0])

    def test_dim_v_from_h1(self):
        assert dim_V_from_h1(3, 1) == 2
        assert Fraction(dim_V_from_h1(1, 1)) == 0


class TestSemigroupProperties:
    def test_sample_size(self):
        samples = semigroup_samples()
        assert len(samples) >= 100
        sdom = [membership(g, x)[0] for g, x, *_ in samples]
        assert any(sdom)
        assert not all(sdom)

    def test_s_dom_is_a_semigroup_and_module(self):
        for g, x, y, _, _ in semigroup_samples():
            if membership(g, x)[0]:
                assert membership(g, x + y)[0], (g.name, x, y)

    def test_s_dom_min_stable(self):
        for g, x, y, _, _ in semigroup_samples():
            if membership(g, x)[0] and membership(g, y)[0]:
                assert membership(g, x.meet(y))[0], (g.name, x, y)

    def test_van_closed_under_lipman_action(self):
        for g, x, y, z, _ in semigroup_samples():
            if membership(g, x)[1]:
                assert membership(g, x + y)[1], (g.name, x, y)
            if membership(g, z)[1]:
                assert membership(g, z + y)[1], (g.name, z, y)

    def test_van_min_stable(self):
        for g, x, y, z, w in semigroup_samples():
            if membership(g, x)[1] and membership(g, y)[1]:
                assert membership(g, x.meet(y))[1], (g.name, x, y)
            if membership(g, z)[1] and membership(g, w)[1]:
                assert membership(g, z.meet(w))[1], (g.name, z, w)

    def test_inclusions(self):
        for g, *cycles in semigroup_samples():
            for u in cycles:
                sdom, van = membership(g, u)
                if sdom:
                    assert in_lipman_cone(g, u), (g.name, u)
                    assert van, (g.name, u)
                if van:
                    assert all(value <= 1 for value in form_values(g, u)), (g.name, u)

    @pytest.mark.parametrize("name", SEMIGROUP_GRAPHS)
    def test_twice_a_base_element_is_not_in_van(self, name):
        g = get_graph(name)
        for v in g.vertices:
            assert not in_van(g, -(basis_cycle(g, v) * 2)), v

    @pytest.mark.parametrize("name", ["A3", "D5", "E6"])
    def test_base_elements_of_rational_graphs_are_in_van(self, name):
        g = get_graph(name)
        for v in g.vertices:
            assert in_van(g, -basis_cycle(g, v)), v

    @pytest.mark.parametrize("name", [*list_entries(), "A4", "D6", "E7"])
    def test_zero_in_van_iff_rational_or_elliptic(self, name):
        g = get_graph(name)
        assert in_van(g, zero_cycle(g)) == (is_rational(g) or is_elliptic(g))

    def test_zero_in_van_literals(self):
        assert in_van(get_graph("elliptic-237"), zero_cycle(get_graph("elliptic-237")))
        assert not in_van(get_graph("ex-445"), zero_cycle(get_graph("ex-445")))

    @pytest.mark.parametrize("name", ["A2", "A3", "A5", "D4", "D5", "D6"])
    def test_h1_vanishing_on_rational_families(self, name):
        g = get_graph(name)
        zmin = laufer_zmin(g)
        for Z in (zmin, zmin * 2, reduced_cycle(g) * 3):
            assert h1_vanishing(g, Z.to_int())

    @pytest.mark.parametrize("name", ["elliptic-237", "ex-dimim"])
    def test_h1_vanishing_fails_on_elliptic_graphs(self, name):
        g = get_graph(name)
        assert is_elliptic(g)
        assert not h1_vanishing(g, laufer_zmin(g))


class TestLatticeOracles:
    @pytest.mark.parametrize(
        "name, cap",
        [
            ("A4", 6),
            ("D5", 6),
            ("E6", 4),
            ("elliptic-237", 6),
            ("ex-dimim", 6),
            ("ex-445", 6),
            ("ex-nonfibration", 6),
        ],
    )
    def test_zmin_is_least_nonzero_lipman_cycle(self, name, cap):
        g = get_graph(name)
        zmin = laufer_zmin(g).ints
        members = list(lipman_points(g, cap))
        assert zmin in members
        for point in members:
            assert all(a >= b for a, b in zip(point, zmin)), point

    @pytest.mark.parametrize("name", ["A3", "elliptic-237", "ex-dimim", "ex-445"])
    def test_laufer_reduce_is_minimal(self, name):
        g = get_graph(name)
        zmin = laufer_zmin(g)
        starts = [-zmin]
        starts += [basis_cycle(g, v) for v in g.vertices]
        starts += [-dual_cycle(g, v) for v in g.vertices]
        checked = 0
        for x in starts:
            reduction = laufer_reduce(g, x)
            chis = [step.chi for step in reduction.trace]
            assert all(b <= a for a, b in zip(chis, chis[1:])), x
            assert chis[-1] == chi(g, reduction.s_x)
            assert reduction.s_x == x + reduction.l
            assert in_lipman_cone(g, reduction.s_x)
            bound = reduction.l.ints
            if math.prod(b + 1 for b in bound) > 5000:
                continue
            box = itertools.product(*(range(b + 1) for b in bound))
            members = [p for p in box if in_lipman_cone(g, x + IntCycle(g.vertices, p))]
            assert members == [bound], x
            checked += 1
        assert checked >= 1 + g.size

    @pytest.mark.parametrize("name", ["A3", "elliptic-237", "ex-dimim", "ex-445"])
    def test_laufer_reduce_literals(self, name):
        g = get_graph(name)
        zmin = laufer_zmin(g)
        assert laufer_reduce(g, -zmin).s_x.is_zero()
        for v in g.vertices:
            assert laufer_reduce(g, basis_cycle(g, v)).s_x == zmin

    @pytest.mark.parametrize("name", ["A3", "elliptic-237", "ex-dimim", "ex-445"])
    def test_orthant_cohomology_cycle_is_monotone(self, name):
        g = get_graph(name)
        rng = random.Random(f"cohcyc:{name}")
        for _ in range(8):
            x = sample_lipman(g, rng) + sample_lattice(g, rng, -2, 1)
            y = x + sample_lattice(g, rng, 0, 2)
            top_x = x + coh_cycle_orthant(g, -x)
            top_y = y + coh_cycle_orthant(g, -y)
            assert top_x <= top_y, (x, y)
            assert in_van(g, -top_x), x
            if y <= top_x:
                assert top_x == top_y, (x, y)

    def test_reported_meet_attains_the_minimum(self):
        g = get_graph("ex-dimim")
        zmin = laufer_zmin(g)
        for chern in dimim_cherns(g):
            results = (
                min_chi_box(g, chern, zmin),
                min_chi_box(g, chern, (zmin * 2).to_int()),
                min_chi_orthant(g, chern),
            )
            for result in results:
                meet = result.minimal_minimizer
                assert meet.is_effective()
                assert chi(g, -chern + meet) == result.min_value

    def test_ex_445_box_minimizers(self):
        g = get_graph("ex-445")
        result = min_chi_box(g, zero_cycle(g), laufer_zmin(g))
        assert result.min_value == -2
        assert result.minimizer_count == 2
        assert result.minimal_minimizer.ints == (3, 1, 1, 1, 1)

    def test_l_dom_literals(self):
        g = get_graph("elliptic-237")
        assert l_dom(g, zero_cycle(g)).ints == (6, 3, 2, 1)
        g = get_graph("ex-445")
        assert l_dom(g, zero_cycle(g)).ints == (4, 1, 1, 1, 1)
        assert l_dom(g, -dual_cycle(g, "v0")).is_zero()

    @pytest.mark.parametrize("name", ["A3", "ex-445"])
    def test_l_dom_is_least(self, name):
        g = get_graph(name)
        for chern in (zero_cycle(g), dual_cycle(g, g.vertices[-1])):
            l = l_dom(g, chern)
            assert in_sdom(g, chern - l)
            for point in itertools.product(*(range(t + 1) for t in l.ints)):
                if point != l.ints:
                    assert not in_sdom(g, chern - IntCycle(g.vertices, point)), point

    def test_l_dom_is_least_elliptic(self):
        g = get_graph("elliptic-237")
        l = l_dom(g, zero_cycle(g))
        for point in itertools.product(*(range(t + 1) for t in l.ints)):
            if point != l.ints:
                assert not in_sdom(g, -IntCycle(g.vertices, point)), point

    def test_levels_cover_the_box_in_order(self):
        caps = [2, 1, 3]
        levels = [list(_level(total, caps)) for total in range(sum(caps) + 1)]
        assert levels[0] == [(0, 0, 0)]
        assert levels[2] == [(0, 0, 2), (0, 1, 1), (1, 0, 1), (1, 1, 0), (2, 0, 0)]
        flat = [point for level in levels for point in level]
        assert sorted(flat) == sorted(itertools.product(range(3), range(2), range(4)))
        assert len(flat) == len(set(flat))

    @pytest.mark.parametrize("name", [*list_entries(), "A1", "A4", "D5", "E6", "E7", "E8"])
    def test_pruned_matches_exhaustive_on_corpus(self, name):
        g = get_graph(name)
        Z = laufer_zmin(g)
        if math.prod(z + 1 for z in Z.ints) > MAX_EXHAUSTIVE_VOLUME:
            pytest.skip("box too large for plain enumeration")
        for chern in (zero_cycle(g), -dual_cycle(g, g.vertices[0])):
            fast = min_chi_box(g, chern, Z)
            slow = min_chi_box_exhaustive(g, chern, Z)
            assert fast.min_value == slow.min_value
            assert fast.minimal_minimizer == slow.minimal_minimizer
            assert fast.minimizer_count == slow.minimizer_count


class TestRestrictedBox:
    def test_restrict_drops_vertices_and_edges(self):
        g = get_graph("E8")
        sub = restrict(g, [v for v in g.vertices if v != "v3"])
        assert sub.size == 7
        assert len(sub.edges) == 4
        assert "v3" not in sub.vertices

    def test_matches_pinned_enumeration(self):
        g = get_graph("ex-dimim")
        Z = IntCycle(g.vertices, [3, 6, 1, 0, 2])
        for chern in dimim_cherns(g):
            fast = min_chi_box(g, chern, Z)
            slow = min_chi_box_exhaustive(g, chern, Z)
            assert fast.strategy == "restricted"
            assert fast.min_value == slow.min_value
            assert fast.minimal_minimizer == slow.minimal_minimizer
            assert fast.minimizer_count == slow.minimizer_count

    def test_disconnected_support(self):
        g = get_graph("E8")
        Z = IntCycle(g.vertices, [2, 2, 0, 2, 2, 2, 2, 2])
        for chern in (zero_cycle(g), -dual_cycle(g, "v3"), -dual_cycle(g, "v1")):
            fast = min_chi_box(g, chern, Z)
            slow = min_chi_box_exhaustive(g, chern, Z)
            assert fast.strategy == "restricted"
            assert fast.min_value == slow.min_value
            assert fast.minimal_minimizer == slow.minimal_minimizer
            assert fast.minimizer_count == slow.minimizer_count


class TestDominanceLiterals:
    def test_ex_dimim_not_dominant_over_canonical_box(self):
        g = get_graph("ex-dimim")
        zmin = laufer_zmin(g)
        Z = canonical_cycle(g).to_int()
        assert Z.ints == (4, 8, 2, 1, 3)
        assert not is_dominant(g, -zmin, Z)
        witness = IntCycle(g.vertices, [3, 6, 1, 0, 2])
        assert witness <= Z
        assert chi(g, zmin + witness) == chi(g, zmin)

    def test_ex_445_dominant_at_central_dual(self):
        g = get_graph("ex-445")
        chern = -dual_cycle(g, "v0")
        Z = (laufer_zmin(g) * 3).to_int()
        assert is_dominant(g, chern, Z)
        assert generic_h1(g, chern, Z) == 0
        assert in_sdom(g, chern)

    def test_single_vertex_box(self):
        g = get_graph("A1")
        Z = (basis_cycle(g, g.vertices[0]) * 3).to_int()
        for result in (min_chi_box(g, zero_cycle(g), Z), min_chi_box_exhaustive(g, zero_cycle(g), Z)):
            assert result.min_value == 0
            assert result.minimal_minimizer.is_zero()
            assert result.minimizer_count == 1

    def test_spt_generators_ex_dimim(self):
        g = get_graph("ex-dimim")
        elliptic_cycle = IntCycle(g.vertices, [3, 6, 1, 0, 2])
        for Z in (laufer_zmin(g), canonical_cycle(g).to_int()):
            assert structure_coh_cycle(g, Z) == elliptic_cycle
            assert spt_generators(g, Z) == {"d"}

    def test_spt_generators_ex_445(self):
        g = get_graph("ex-445")
        assert structure_coh_cycle(g, laufer_zmin(g)).ints == (3, 1, 1, 1, 1)
        assert spt_generators(g, laufer_zmin(g)) == set()

    def test_structure_cycle_needs_effective_box(self):
        g = get_graph("ex-dimim")
        with pytest.raises(NonEffectiveZ):
            structure_coh_cycle(g, -laufer_zmin(g).to_int())
