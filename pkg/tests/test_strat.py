"""Stratification construction, axioms and the closure poset."""

import pytest

from strathom.complexes import SimplicialComplex, VertexLevelMap, cone, sphere, suspension
from strathom.strat import LevelClassError, Stratification, Stratum, strata_from_levels
from strathom.fixtures import torus7


def test_cone_s0_has_three_strata():
    cx, lev = cone(sphere(0))
    st = strata_from_levels(cx, lev)
    assert len(st.strata) == 3
    dims = sorted(s.dim for s in st.strata)
    assert dims == [0, 1, 1]
    assert st.validate().ok


def test_trivial_levels_one_stratum_per_component():
    two_edges = SimplicialComplex(4, [(0, 1), (2, 3)])
    st = strata_from_levels(two_edges, VertexLevelMap([1, 1, 1, 1], 1))
    assert len(st.strata) == 2
    assert all(s.regular for s in st.strata)


def test_suspension_of_s0_strata():
    cx, lev = suspension(sphere(0))
    st = strata_from_levels(cx, lev)
    # two poles + two equatorial arcs
    assert len(st.strata) == 4
    assert sorted(s.dim for s in st.strata) == [0, 0, 1, 1]
    assert st.validate().ok


def test_level_class_dimension_check():
    # an edge whose two endpoints are both at level 0 is not a filtration
    edge = SimplicialComplex(2, [(0, 1)])
    with pytest.raises(LevelClassError):
        strata_from_levels(edge, VertexLevelMap([0, 0], 0))


def test_s4_violation_reported():
    # endpoint in a dim-1 stratum, open edge in a dim-0 stratum: backwards
    edge = SimplicialComplex(2, [(0, 1)])
    st = Stratification(
        edge,
        [0, 1, 1],
        [Stratum(0, 1, [0], True), Stratum(1, 0, [1, 2], False)],
        1,
    )
    rep = st.validate()
    assert not rep.ok
    assert any(v["axiom"] == "S4" for v in rep.violations)
    assert any(v["axiom"] == "dim-consistency" for v in rep.violations)


def test_closure_formula():
    cx, lev = cone(sphere(1))
    st = strata_from_levels(cx, lev)
    assert st.validate().ok
    closures = st._closure_sets()
    for b, stratum in enumerate(st.strata):
        union = set(stratum.simplices)
        for a in range(len(st.strata)):
            if a != b and st.leq(a, b):
                union |= set(st.strata[a].simplices)
        assert union == closures[b]


def test_poset_depth_examples():
    # single stratum: depth 0
    tri = SimplicialComplex(3, [(0, 1, 2)])
    st = strata_from_levels(tri, VertexLevelMap([2] * 3, 2))
    assert st.depth() == 0
    # cone(cone(S^0)): apex < edge stratum < top, depth 2
    c1, lev1 = cone(sphere(0))
    c2, lev2 = cone(c1, lev1)
    st2 = strata_from_levels(c2, lev2)
    assert st2.depth() == 2
    assert st2.validate().ok


def test_minimal_strata_are_closed_and_top_are_regular():
    c2, lev2 = cone(cone(sphere(0))[0], cone(sphere(0))[1])
    st = strata_from_levels(c2, lev2)
    pairs = st.order_pairs()
    for s in st.strata:
        minimal = not any(b == s.id for a, b in pairs)
        if minimal:
            # closure of a minimal stratum is itself
            closure = st._closure_sets()[s.id]
            assert closure == set(s.simplices)
        if s.dim == st.n:
            assert s.regular


def test_strata_from_levels_idempotent():
    cx, lev = suspension(torus7())
    st = strata_from_levels(cx, lev)
    lev2 = VertexLevelMap(
        [st.vertex_level(v) for v in range(cx.vertex_count)], st.n
    )
    st2 = strata_from_levels(cx, lev2)
    assert st.same_partition(st2)


def test_depth_always_finite_and_bounded():
    cx, lev = suspension(sphere(1))
    st = strata_from_levels(cx, lev)
    assert 0 <= st.depth() <= st.n
