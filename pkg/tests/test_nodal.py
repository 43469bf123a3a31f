import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given

from hcizkit.constellations import Constellation, genus
from hcizkit.cumulant import PermTuple, ell, m_C, p_C, p_C_partition_formula
from hcizkit.hurwitz import HurwitzQuery, bms_numbers, double_hurwitz, higher_order_hurwitz
from hcizkit.nodal import (NodalConstellation, NodalSurface, arithmetic_genus_S, arithmetic_genus_S_eta,
                           covering_count, covering_orbits, ell_from_genus, folding_arithmetic_genus,
                           folding_decomposition, folding_excess, folding_surface, foldings, nodal_S,
                           nodal_bookkeeping, singular_point_count, singular_point_count_closed, surface_S_eta)
from hcizkit.permutations import CycleType, Permutation, all_permutations
from strategies import tuple_pairs

P = Permutation.parse
C = CycleType.parse


def _example_pair():
    # two colors on five points, two orbits of the joint action
    s = PermTuple.parse(["(13)", "(123)(45)"], 5)
    t = PermTuple.parse(["(13)(45)", "()"], 5)
    return s, t


def test_two_color_example():
    s, t = _example_pair()
    assert arithmetic_genus_S(s, t) == 2
    assert ell(s, t) == ell_from_genus(s, t) == 6
    surf = nodal_S(s, t).surface()
    assert surf.num_connected() == 2 and surf.arithmetic_genus() == 2


def test_nodal_constellation_of_genus_four():
    e1 = Constellation([Permutation.parse(x, 5)
                        for x in ["(12)", "(12)(34)", "(12)(345)", "(12)(45)"]])
    e2 = Constellation([Permutation.parse(x, 5) for x in ["(132)(45)", "(15)(24)", "(23)", "(14)(35)", "()"]])
    nc = NodalConstellation([e1, e2])
    assert nc.is_connected()
    assert nc.arithmetic_genus() == nc.surface().arithmetic_genus() == 4


def test_generic_surface_geometric_vs_arithmetic():
    # two genus-one components glued by two nodes: one loop in the node graph
    X = NodalSurface([1, 1], [[0, 1], [0, 1]])
    assert X.geometric_genus() == 2 and X.arithmetic_genus() == 3
    Y = NodalSurface([1, 1, 0], [[0, 1, 2], [0, 1], [1, 2]])
    assert Y.arithmetic_genus() == 2 + 2 + 1 + 1 - 3 + 1
    Z = NodalSurface([0, 0], [])
    assert Z.num_connected() == 2 and not Z.is_connected()
    with pytest.raises(ValueError):
        NodalSurface([0], [[0, 1]])


def test_single_color_genus_is_map_genus():
    for n in range(1, 4):
        for s in all_permutations(n):
            for t in all_permutations(n):
                S, T = PermTuple([s]), PermTuple([t])
                c = Constellation([s, t.inverse()])
                if len(c.orbits()) == 1:
                    assert arithmetic_genus_S(S, T) == genus(c)


def _grid(n, D):
    S = list(all_permutations(n))
    for ss in itertools.product(S, repeat=D):
        for tt in itertools.product(S, repeat=D):
            yield PermTuple(ss, n), PermTuple(tt, n)


def test_bookkeeping_small_grid():
    for n, D in ((2, 1), (2, 2), (3, 1)):
        for s, t in _grid(n, D):
            lo = ell(s, t)
            for l in range(lo, lo + 3):
                r = nodal_bookkeeping(s, t, l)
                assert r["failure"] is None
                for k in range(l + 1):
                    assert r["by_k"].get(k, 0) == m_C(s, t, l, k)


def test_surface_with_eta_matches_closed_form():
    s, t = PermTuple.parse(["(12)", "()"], 3), PermTuple.parse(["()", "(23)"], 3)
    etas = [Constellation([P("(12)", 3)]), Constellation([P("(23)", 3)])]
    surf = surface_S_eta(s, t, etas)
    assert surf.arithmetic_genus() == arithmetic_genus_S_eta(s, t, etas)
    with pytest.raises(ValueError):
        surface_S_eta(s, t, [Constellation([P("(13)", 3)]), etas[1]])


def test_folding_route_and_additivity():
    for n, D in ((2, 2), (3, 1)):
        for s, t in _grid(n, D):
            G0 = arithmetic_genus_S(s, t)
            for f in foldings(s, t):
                assert f.genus == G0 + f.excess
                assert folding_surface(s, t, f.pis).arithmetic_genus() == f.genus
            lo = ell(s, t)
            for l in range(lo, lo + 3):
                assert folding_decomposition(s, t, l) == p_C_partition_formula(s, t, l) == p_C(s, t, l)


def test_minimal_case_uses_tree_foldings():
    s, t = _example_pair()
    lo = ell(s, t)
    trees = [f for f in foldings(s, t) if f.excess == 0]
    assert trees and folding_decomposition(s, t, lo) == p_C(s, t, lo)
    assert folding_arithmetic_genus(s, t, trees[0].pis) == arithmetic_genus_S(s, t)
    assert folding_excess(s, t, trees[0].pis) == 0


def test_dot_output():
    s, t = _example_pair()
    dot = nodal_S(s, t).surface().to_dot()
    assert dot.startswith("graph S {") and dot.rstrip().endswith("}")
    assert "shape=triangle" in dot
    f = foldings(s, t)[0]
    assert "shape=star" in folding_surface(s, t, f.pis).to_dot()


# --- coverings ------------------------------------------------------------

def _q(profs, **kw):
    return HurwitzQuery(tuple((C(a), C(b)) for a, b in profs), **kw)


def test_covering_counts_match_enumeration():
    for profs, g in [((("2", "2"),), 0), ((("2,1", "3"),), 0), ((("2,1", "2,1"),), 0),
                     ((("2", "2"), ("2", "2")), 1), ((("3", "2,1"), ("2,1", "3")), 0)]:
        q = _q(profs, genus=g)
        _, l = q.resolve()
        for k in range(l + 1):
            o = covering_orbits(q, k)
            assert o["weighted"] == covering_count(q, k)
            assert covering_count(q, k) * factorial(q.n) == bms_numbers(q, k)
            if o["systems"]:
                assert o["singular_points"] == {singular_point_count(q, k)} == {singular_point_count_closed(q, k)}


def test_single_color_reduces_to_double_hurwitz():
    for a, b, g in [("2,1", "3", 0), ("3", "3", 0), ("2,1", "2,1", 1)]:
        q = _q([(a, b)], genus=g)
        assert covering_count(q, restricted_monotone=True) == Fraction(double_hurwitz(C(a), C(b), g), 6)


def test_counts_are_automorphism_weighted():
    # the cover z -> z^2 has an automorphism, so n! does not divide the count
    q = _q([("2", "2")], genus=0)
    assert covering_count(q, restricted_monotone=True) == Fraction(1, 2)
    o = covering_orbits(q, restricted_monotone=True)
    assert o["orbits"] == 1 and o["weighted"] == Fraction(1, 2)


def test_monotone_subset_not_relabeling_closed():
    q = _q([("2,1", "2,1")], genus=0)
    o = covering_orbits(q, restricted_monotone=True)
    assert not o["closed"]
    assert o["systems"] == higher_order_hurwitz(q)


def test_singular_points_count_every_color_separately():
    # with two colors the direct count of cycles is 2 - 2H + n(k + 2D - 2);
    # the alternative 2 - 2H + n(k + D - 1) undercounts by n(D - 1)
    q = _q([("2", "2"), ("2", "2")], genus=1)
    o = covering_orbits(q, 0)
    assert o["singular_points"] == {4} == {singular_point_count_closed(q, 0)}
    assert 2 - 2 * 1 + 2 * (0 + 2 - 1) == 2


def test_covering_rejects_bad_queries():
    with pytest.raises(ValueError):
        covering_count(_q([("1,1", "2")], genus=0), 0)
    q = _q([("2,1", "3")], genus=0)
    with pytest.raises(ValueError):
        covering_count(q, 0, restricted_monotone=True)
    with pytest.raises(ValueError):
        covering_count(q)


@given(tuple_pairs(max_n=3, max_D=2))
def test_genus_ell_relation(pair):
    s, t = pair
    cyc = sum(a.num_cycles() + b.num_cycles() for a, b in zip(s, t))
    G = arithmetic_genus_S(s, t)
    assert G >= 0
    assert ell(s, t) == cyc + 2 * G - 2 - 2 * s.n * (s.D - 1)
