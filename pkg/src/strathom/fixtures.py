"""Built-in instances: the square-with-cross refinement family, the
1-exceptional interval, cone/suspension/join spaces, and the refinement pairs
driven by the verification suites.

Everything is generated by the constructors; the `examples` CLI subcommand
writes the same data out as JSON so external runs stay reproducible.
"""

from .complexes import SimplicialComplex, VertexLevelMap, cone, join_sphere, sphere, suspension
from .perversity import INF, NINF, Perversity, top_perversity, zero_perversity
from .refinement import check_refinement
from .strat import Stratification, strata_from_levels


def torus7():
    """Minimal 7-vertex triangulation of the 2-torus."""
    tris = [((i) % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [((i) % 7, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return SimplicialComplex(7, [tuple(sorted(t)) for t in tris])


def rp2_6():
    """6-vertex real projective plane (antipodal icosahedron quotient)."""
    faces = [
        (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 4),
        (1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5),
    ]
    return SimplicialComplex(6, faces)


def trivial_stratification(cx, n=None):
    n = cx.dim if n is None else n
    return strata_from_levels(cx, VertexLevelMap([n] * cx.vertex_count, n))


def link_stratification(cx):
    return trivial_stratification(cx)


# -- the 1-exceptional interval ---------------------------------------------


def interval_pair():
    """cone(S^0) with its cone stratification against the one-stratum
    interval: the apex is 1-exceptional."""
    cx, lev = cone(sphere(0))
    fine = strata_from_levels(cx, lev)
    coarse = trivial_stratification(cx, n=1)
    apex = fine.stratum_of(cx.index((2,)))
    fine = fine.with_labels({apex: "v"})
    pair = check_refinement(cx, fine, coarse)
    return {
        "name": "interval-1-exceptional",
        "complex": cx,
        "pair": pair,
        "perversities": {"0": zero_perversity(fine)},
        "apex": apex,
    }


# -- square with a cross -----------------------------------------------------


def _grid_square(cells=4, flipped=((1, 1),)):
    """Unit-cell triangulated square; a few diagonals are flipped so that no
    triangle lies entirely on the cross of the ejemplo stratifications."""
    verts = {}
    n = cells + 1
    for y in range(n):
        for x in range(n):
            verts[(x, y)] = y * n + x
    flipped = set(flipped)
    tris = []
    for y in range(cells):
        for x in range(cells):
            a, b = verts[(x, y)], verts[(x + 1, y)]
            c, d = verts[(x, y + 1)], verts[(x + 1, y + 1)]
            if (x, y) in flipped:
                tris.append((a, b, d))
                tris.append((a, c, d))
            else:
                tris.append((a, b, c))
                tris.append((b, c, d))
    return SimplicialComplex(n * n, tris), verts


def ejemplo():
    """The square-with-cross refinement family: a fine stratification with
    three point strata, three segment strata and three regions; an
    intermediate where the vertical segment has been absorbed below; and a
    coarse one where the remaining points melt into the line and the top
    region.  Returns the three refinement pairs J, K and the composite I."""
    cx, verts = _grid_square(4)
    q1, q2, q3 = verts[(2, 2)], verts[(1, 4)], verts[(3, 4)]

    def levels(points0, line_pred, vertical=False):
        lv = []
        n = 5
        for y in range(n):
            for x in range(n):
                v = verts[(x, y)]
                if v in points0:
                    lv.append(0)
                elif y == 2 and line_pred(x):
                    lv.append(1)
                elif vertical and x == 2 and y < 2:
                    lv.append(1)
                else:
                    lv.append(2)
        return VertexLevelMap(lv, 2)

    lev_fine = levels({q1, q2, q3}, lambda x: x != 2, vertical=True)
    lev_mid = levels({q1, q2, q3}, lambda x: x != 2, vertical=False)
    lev_coarse = levels({q3}, lambda x: True, vertical=False)
    fine = strata_from_levels(cx, lev_fine)
    mid = strata_from_levels(cx, lev_mid)
    coarse = strata_from_levels(cx, lev_coarse)

    def label_points(st, names):
        labels = {}
        for v, name in names.items():
            labels[st.stratum_of(cx.index((v,)))] = name
        return labels

    fine_labels = label_points(fine, {q1: "Q1", q2: "Q2", q3: "Q3"})
    fine_labels[fine.stratum_of(cx.index((verts[(0, 2)], verts[(1, 2)])))] = "S1"
    fine_labels[fine.stratum_of(cx.index((verts[(3, 2)], verts[(4, 2)])))] = "S2"
    fine_labels[fine.stratum_of(cx.index((verts[(2, 0)], verts[(2, 1)])))] = "S3"
    fine_labels[fine.stratum_of(cx.index((verts[(0, 4)],)))] = "R1"
    fine_labels[fine.stratum_of(cx.index((verts[(4, 0)],)))] = "R2"
    fine_labels[fine.stratum_of(cx.index((verts[(0, 0)],)))] = "R3"
    fine = fine.with_labels(fine_labels)

    mid_labels = label_points(mid, {q1: "Q1", q2: "Q2", q3: "Q3"})
    mid_labels[mid.stratum_of(cx.index((verts[(0, 2)], verts[(1, 2)])))] = "S1"
    mid_labels[mid.stratum_of(cx.index((verts[(3, 2)], verts[(4, 2)])))] = "S2"
    mid_labels[mid.stratum_of(cx.index((verts[(0, 4)],)))] = "R1"
    mid_labels[mid.stratum_of(cx.index((verts[(0, 0)],)))] = "R4"
    mid = mid.with_labels(mid_labels)

    coarse_labels = label_points(coarse, {q3: "Q3"})
    coarse_labels[coarse.stratum_of(cx.index((verts[(0, 2)], verts[(1, 2)])))] = "S4"
    coarse_labels[coarse.stratum_of(cx.index((verts[(0, 4)],)))] = "R5"
    coarse_labels[coarse.stratum_of(cx.index((verts[(0, 0)],)))] = "R4"
    coarse = coarse.with_labels(coarse_labels)

    pair_j = check_refinement(cx, fine, mid)
    pair_k = check_refinement(cx, mid, coarse)
    pair_i = check_refinement(cx, fine, coarse)

    def by_label(st):
        return {name: sid for sid, name in st.labels.items()}

    mid_ids = by_label(mid)
    k_perversities = {
        "0": zero_perversity(mid),
        "t": top_perversity(mid),
        "mixed": Perversity(
            mid,
            {
                mid_ids["Q1"]: 1,
                mid_ids["Q2"]: 0,
                mid_ids["Q3"]: 7,
                mid_ids["S1"]: 0,
                mid_ids["S2"]: 0,
            },
        ),
    }
    fine_ids = by_label(fine)
    wild = Perversity(
        fine,
        {
            fine_ids["Q1"]: INF,
            fine_ids["Q2"]: 0,
            fine_ids["Q3"]: NINF,
            fine_ids["S1"]: 3,
            fine_ids["S2"]: -2,
            fine_ids["S3"]: 1,
        },
    )
    return {
        "name": "ejemplo-square-with-cross",
        "complex": cx,
        "fine": fine,
        "mid": mid,
        "coarse": coarse,
        "J": pair_j,
        "K": pair_k,
        "I": pair_i,
        "K_perversities": k_perversities,
        "identity_perversities": {
            "0": zero_perversity(fine),
            "t": top_perversity(fine),
            "mixed": wild,
        },
    }


# -- cone over S^1, point-refined --------------------------------------------


def cone_s1_point_refined():
    cx, lev = cone(sphere(1))
    coarse = strata_from_levels(cx, lev)
    apex_sid = cx.index((3,))
    w_sid = cx.index((0,))
    groups = [[apex_sid], [w_sid],
              [sid for sid in range(len(cx)) if sid not in (apex_sid, w_sid)]]
    fine = Stratification.from_partition(cx, groups, 2)
    fine = fine.with_labels(
        {fine.stratum_of(apex_sid): "v", fine.stratum_of(w_sid): "w"}
    )
    pair = check_refinement(cx, fine, coarse)
    v, w = fine.stratum_of(apex_sid), fine.stratum_of(w_sid)
    return {
        "name": "cone-s1-point-refined",
        "complex": cx,
        "pair": pair,
        "perversities": {
            "0": zero_perversity(fine),
            "t": top_perversity(fine),
            "mixed": Perversity(fine, {v: 2, w: 0}),
        },
    }


# -- suspension of the torus, equator-point-refined --------------------------


def sigma_t2_equator():
    cx, lev = suspension(torus7())
    coarse = strata_from_levels(cx, lev)
    north, south = cx.index((0,)), cx.index((1,))
    w_sid = cx.index((2,))
    groups = [[north], [south], [w_sid],
              [sid for sid in range(len(cx)) if sid not in (north, south, w_sid)]]
    fine = Stratification.from_partition(cx, groups, 3)
    n_id, s_id, w_id = (fine.stratum_of(x) for x in (north, south, w_sid))
    fine = fine.with_labels({n_id: "n", s_id: "s", w_id: "w"})
    pair = check_refinement(cx, fine, coarse)
    return {
        "name": "sigma-t2-equator-point",
        "complex": cx,
        "pair": pair,
        "perversities": {
            "0": zero_perversity(fine),
            "t": top_perversity(fine),
            "mixed": Perversity(fine, {n_id: 2, s_id: 0, w_id: 1}),
        },
    }


# -- double-suspension join fixture ------------------------------------------


def join_fixture():
    """S^0 * S^0 * S^1 filtered by S^0 inside the inner circle: two point
    strata, two arc strata; coarsened to circle + regular."""
    inner_cx, inner_lev = suspension(sphere(1))
    cx, lev = join_sphere(0, inner_cx, inner_lev)
    fine = strata_from_levels(cx, lev)
    coarse_levels = VertexLevelMap(
        [1 if lev.levels[v] <= 1 else 3 for v in range(cx.vertex_count)], 3
    )
    coarse = strata_from_levels(cx, coarse_levels)
    a_id = fine.stratum_of(cx.index((0,)))
    b_id = fine.stratum_of(cx.index((1,)))
    arc1 = fine.stratum_of(cx.index((2,)))
    arc2 = fine.stratum_of(cx.index((3,)))
    fine = fine.with_labels({a_id: "a", b_id: "b", arc1: "A1", arc2: "A2"})
    coarse = coarse.with_labels(
        {coarse.stratum_of(cx.index((0,))): "circle"}
    )
    pair = check_refinement(cx, fine, coarse)
    return {
        "name": "double-suspension-join",
        "complex": cx,
        "pair": pair,
        "perversities": {
            "0": zero_perversity(fine),
            "t": top_perversity(fine),
            "mixed": Perversity(fine, {a_id: 2, b_id: 2, arc1: 1, arc2: 1}),
        },
    }


def join_to_point():
    """The double-suspension join coarsened all the way to one stratum: a
    two-step simple decomposition whose steps stay K-admissible."""
    base = join_fixture()
    cx = base["complex"]
    pair0 = base["pair"]
    fine = pair0.fine
    coarse = trivial_stratification(cx, n=3)
    pair = check_refinement(cx, fine, coarse)
    ids = {lbl: s for s, lbl in fine.labels.items()}
    return {
        "name": "join-to-one-stratum",
        "complex": cx,
        "pair": pair,
        "perversities": {
            "0": zero_perversity(fine),
            "t": top_perversity(fine),
            "mixed": Perversity(
                fine, {ids["a"]: 1, ids["b"]: 1, ids["A1"]: 0, ids["A2"]: 0}
            ),
        },
    }


def identity_fixture():
    data = ejemplo()
    fine = data["fine"]
    pair = check_refinement(data["complex"], fine, fine)
    return {
        "name": "identity-on-ejemplo",
        "complex": data["complex"],
        "pair": pair,
        "perversities": data["identity_perversities"],
    }


COARSENING_FIXTURES = {
    "identity": identity_fixture,
    "ejemplo-K": lambda: _ejemplo_pair("K"),
    "cone-s1-point": cone_s1_point_refined,
    "sigma-t2-equator": sigma_t2_equator,
    "join": join_fixture,
    "join-to-point": join_to_point,
}


def _ejemplo_pair(which):
    data = ejemplo()
    return {
        "name": f"ejemplo-{which}",
        "complex": data["complex"],
        "pair": data[which],
        "perversities": data["K_perversities"] if which == "K" else {"0": zero_perversity(data["fine"])},
    }


def all_fixture_names():
    return sorted(COARSENING_FIXTURES) + ["ejemplo-J", "ejemplo-I", "interval"]


def load_fixture(name):
    if name in COARSENING_FIXTURES:
        return COARSENING_FIXTURES[name]()
    if name == "interval":
        return interval_pair()
    if name in ("ejemplo-J", "ejemplo-I"):
        return _ejemplo_pair(name.split("-")[1])
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(all_fixture_names())}")
