"""Perverse degrees, allowability and the two chain complexes."""

from fractions import Fraction

import pytest

from strathom.complexes import SimplicialComplex, cone, sphere
from strathom.chains import (
    FullnessError,
    allowability,
    field,
    full_chain_complex,
    fullness_violations,
    intersection_complex,
    parse_ring,
    perverse_degree,
    require_full,
    tame_complex,
)
from strathom.perversity import INF, NINF, Perversity, zero_perversity
from strathom.strat import Stratification, strata_from_levels
from strathom import homalg
from strathom.fixtures import torus7, trivial_stratification


def interval_strat():
    cx, lev = cone(sphere(0))
    st = strata_from_levels(cx, lev)
    apex = st.stratum_of(cx.index((2,)))
    return cx, st, apex


def test_parse_ring():
    assert parse_ring("Z") == "Z"
    assert parse_ring("F2") == ("F", 2)
    assert parse_ring("Fq:5") == ("F", 5)
    with pytest.raises(ValueError):
        parse_ring("F4")


def test_perverse_degree_examples():
    cx, st, apex = interval_strat()
    edge = cx.index((0, 2))
    far_vertex = cx.index((1,))
    # stratum disjoint from the simplex
    assert perverse_degree(st, far_vertex, apex) == NINF
    # edge through the apex has one vertex at level 0
    assert perverse_degree(st, edge, apex) == 0
    # simplex inside a regular stratum, measured against that stratum
    regular = st.stratum_of(edge)
    assert perverse_degree(st, edge, regular) == 1


def test_allowability_cone_cases():
    cx, st, apex = interval_strat()
    edge = cx.index((0, 2))
    vertex_apex = cx.index((2,))
    p0 = Perversity(st, {apex: 0})
    assert allowability(st, p0, edge) == {"allowable": True, "tame": True}
    assert allowability(st, p0, vertex_apex) == {"allowable": False, "tame": False}
    pinf = Perversity(st, {apex: INF})
    got = allowability(st, pinf, vertex_apex)
    assert got["allowable"] and not got["tame"]  # lives inside the singular set


def test_allowability_monotone_in_p():
    cx, st, apex = interval_strat()
    for lo, hi in ((-2, 0), (0, 1), (-1, INF)):
        a_lo = [allowability(st, Perversity(st, {apex: lo}), sid)["allowable"]
                for sid in range(len(cx))]
        a_hi = [allowability(st, Perversity(st, {apex: hi}), sid)["allowable"]
                for sid in range(len(cx))]
        assert all(not x or y for x, y in zip(a_lo, a_hi))


def test_one_stratum_space_everything_tame():
    tri = SimplicialComplex(3, [(0, 1, 2)])
    st = trivial_stratification(tri)
    p = zero_perversity(st)
    for sid in range(len(tri)):
        assert allowability(st, p, sid) == {"allowable": True, "tame": True}


def test_fullness_error_points_at_subdivision():
    edge = SimplicialComplex(2, [(0, 1)])
    st = Stratification.from_partition(edge, [[0], [1], [2]], 1)
    assert fullness_violations(st)
    with pytest.raises(FullnessError, match="barycentric_subdivide"):
        require_full(st)


def naive_betti(cx):
    """Independent reducer: boundary ranks over Q via Fractions."""
    by_dim = [cx.simplices_of_dim(k) for k in range(cx.dim + 1)]

    def boundary(k):
        rows = {sid: i for i, sid in enumerate(by_dim[k - 1])}
        mat = [[Fraction(0)] * len(by_dim[k]) for _ in rows]
        for j, sid in enumerate(by_dim[k]):
            s = cx.simplices[sid]
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                mat[rows[cx.index(face)]][j] = Fraction((-1) ** i)
        return mat

    def rank(mat):
        if not mat or not mat[0]:
            return 0
        mat = [row[:] for row in mat]
        m, n = len(mat), len(mat[0])
        r = 0
        for j in range(n):
            piv = next((i for i in range(r, m) if mat[i][j]), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = 1 / mat[r][j]
            mat[r] = [v * inv for v in mat[r]]
            for i in range(m):
                if i != r and mat[i][j]:
                    f = mat[i][j]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
            r += 1
        return r

    ranks = [0] + [rank(boundary(k)) for k in range(1, cx.dim + 1)] + [0]
    return [
        len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(cx.dim + 1)
    ]


@pytest.mark.parametrize("builder", [lambda: sphere(1), lambda: sphere(2), torus7,
                                     lambda: cone(sphere(1))[0]])
def test_trivial_stratification_matches_naive_reducer(builder):
    cx = builder()
    st = trivial_stratification(cx)
    c = full_chain_complex(st)
    h = homalg.homology(c)
    assert list(h.betti_vector(cx.dim)) == naive_betti(cx)
    # trivially stratified spaces: intersection complex = ordinary chains
    ic = intersection_complex(st, zero_perversity(st))
    assert ic.dims == c.dims
    assert homalg.homology(ic) == h
    tc = tame_complex(st, zero_perversity(st))
    assert homalg.homology(tc) == h


def test_interval_intersection_vs_tame():
    cx, st, apex = interval_strat()
    p0 = Perversity(st, {apex: 0})
    h = homalg.homology(intersection_complex(st, p0))
    t = homalg.homology(tame_complex(st, p0))
    assert h.betti_vector(1) == (1, 0)
    assert t.betti_vector(1) == (0, 0)  # the 1-exceptional pathology


def test_tame_equals_intersection_when_p_below_top():
    # p <= t: tame and intersection homology agree
    cx, lev = cone(sphere(1))
    st = strata_from_levels(cx, lev)
    apex = st.stratum_of(cx.index((3,)))
    for val in (-1, 0):  # t(apex) = 0
        p = Perversity(st, {apex: val})
        assert homalg.homology(tame_complex(st, p)) == homalg.homology(
            intersection_complex(st, p)
        )


def test_d_squared_zero_everywhere():
    cx, lev = cone(torus7())
    st = strata_from_levels(cx, lev)
    apex = st.stratum_of(cx.index((cx.vertex_count - 1,)))
    for val in (-1, 0, 1, 2):
        p = Perversity(st, {apex: val})
        for ring in ("Z", field(2)):
            assert intersection_complex(st, p, ring).d_squared_ok()
            assert tame_complex(st, p, ring).d_squared_ok()


def test_generators_are_integer_vectors_over_allowable_simplices():
    cx, st, apex = interval_strat()
    p0 = Perversity(st, {apex: 0})
    c = intersection_complex(st, p0)
    # degree 1: single generator = sum of the two edges (kernel of the apex row)
    assert c.dims[1] == 1
    gen = [c.generators[1][i, 0] for i in range(2)]
    assert sorted(abs(g) for g in gen) == [1, 1]


def test_regularity_via_top_level():
    cx, st, apex = interval_strat()
    from strathom.chains import filtered_view

    for sid in range(len(cx)):
        view = filtered_view(st, sid)
        top = max(st.vertex_level(v) for v in cx.simplices[sid])
        assert view.regular == (top == st.n)


def test_chain_complex_json_export():
    cx, st, apex = interval_strat()
    c = intersection_complex(st, Perversity(st, {apex: 0}))
    data = c.to_json_dict()
    assert data["ring"] == "Z"
    assert data["dims"] == c.dims
    for k, rows in enumerate(data["boundaries"]):
        assert len(rows) == (c.dims[k - 1] if k else 0)
        assert all(len(r) == c.dims[k] for r in rows)
