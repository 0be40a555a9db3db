"""Finite abstract simplicial complexes and the stratified constructors.

A complex stores its simplices as sorted vertex tuples, closed under faces,
in lexicographic order.  That order is the canonical basis order for every
matrix downstream, so identical inputs always produce identical matrices.

Filtrations are carried by an explicit vertex level map (vertex -> 0..n); the
formal dimension n is part of the data, not inferred, so filtrations with no
codimension-0 jump stay representable.
"""

import json
from itertools import combinations


class SimplicialComplex:
    def __init__(self, vertex_count, simplices):
        """simplices: iterable of vertex index iterables; faces are added."""
        closed = set()
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s:
                raise ValueError("empty simplex not allowed")
            if s[0] < 0 or s[-1] >= vertex_count:
                raise ValueError(f"vertex out of range in simplex {s}")
            for k in range(1, len(s) + 1):
                for face in combinations(s, k):
                    closed.add(face)
        self.vertex_count = vertex_count
        self.simplices = tuple(sorted(closed))
        self.dim = max((len(s) - 1 for s in self.simplices), default=-1)
        self._index = {s: i for i, s in enumerate(self.simplices)}

    def __len__(self):
        return len(self.simplices)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self.simplices == other.simplices
        )

    def index(self, simplex):
        return self._index[tuple(sorted(simplex))]

    def has(self, simplex):
        return tuple(sorted(simplex)) in self._index

    def simplices_of_dim(self, k):
        """Ids of k-simplices, in canonical (lexicographic) order."""
        return [i for i, s in enumerate(self.simplices) if len(s) == k + 1]

    def faces_of(self, sid):
        """Ids of all proper nonempty faces of the given simplex."""
        cache = getattr(self, "_faces_cache", None)
        if cache is None:
            cache = self._faces_cache = {}
        got = cache.get(sid)
        if got is None:
            s = self.simplices[sid]
            got = []
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    got.append(self._index[face])
            cache[sid] = got
        return got

    def facets_of(self, sid):
        s = self.simplices[sid]
        if len(s) == 1:
            return []
        return [self._index[s[:i] + s[i + 1 :]] for i in range(len(s))]

    def f_vector(self):
        fv = [0] * (self.dim + 1)
        for s in self.simplices:
            fv[len(s) - 1] += 1
        return fv

    def euler_characteristic(self):
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def check_downward_closed(self):
        for s in self.simplices:
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    if face not in self._index:
                        return False
        return True


class VertexLevelMap:
    """Vertex -> filtration level in [0, n]; realizes X_i as the full
    subcomplex on vertices of level <= i."""

    def __init__(self, levels, n):
        levels = tuple(levels)
        if levels:
            if min(levels) < 0 or max(levels) > n:
                raise ValueError("vertex level outside [0, n]")
            if max(levels) != n:
                raise ValueError("no vertex at top level; formal dimension too large")
        self.levels = levels
        self.n = n

    def __eq__(self, other):
        return (
            isinstance(other, VertexLevelMap)
            and self.levels == other.levels
            and self.n == other.n
        )

    def simplex_level(self, simplex):
        return max(self.levels[v] for v in simplex)


def point():
    return SimplicialComplex(1, [(0,)])


def sphere(m):
    """S^m triangulated as the boundary of the standard (m+1)-simplex."""
    verts = list(range(m + 2))
    return SimplicialComplex(m + 2, combinations(verts, m + 1))


def cone(base, levels=None, apex_level=0):
    """Cone on a filtered complex; the apex is a new last vertex.

    Vertex levels of the base shift up by one (the cone filtration); the apex
    sits at ``apex_level``.  Cone of the empty complex is a single vertex.
    """
    if levels is None:
        levels = VertexLevelMap([base.dim] * base.vertex_count, max(base.dim, 0))
    n_cone = levels.n + 1 if base.vertex_count else 0
    if not 0 <= apex_level <= n_cone:
        raise ValueError(f"apex level {apex_level} outside [0, {n_cone}]")
    apex = base.vertex_count
    if base.vertex_count == 0:
        return point(), VertexLevelMap([apex_level], n_cone)
    simplices = list(base.simplices)
    simplices.append((apex,))
    for s in base.simplices:
        simplices.append(s + (apex,))
    out = SimplicialComplex(base.vertex_count + 1, simplices)
    new_levels = [lv + 1 for lv in levels.levels] + [apex_level]
    return out, VertexLevelMap(new_levels, n_cone)


def join_sphere(m, base, levels=None):
    """Simplicial join S^m * K with the join filtration: the sphere at level
    m, a base vertex of old level i at level i + m + 1."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if levels is None:
        levels = VertexLevelMap([base.dim] * base.vertex_count, max(base.dim, 0))
    sph = sphere(m)
    shift = sph.vertex_count
    simplices = list(sph.simplices)
    for s in base.simplices:
        simplices.append(tuple(v + shift for v in s))
    for a in sph.simplices:
        for b in base.simplices:
            simplices.append(a + tuple(v + shift for v in b))
    out = SimplicialComplex(shift + base.vertex_count, simplices)
    new_levels = [m] * shift + [lv + m + 1 for lv in levels.levels]
    n_join = levels.n + m + 1 if base.vertex_count else m
    return out, VertexLevelMap(new_levels, n_join)


def suspension(base, levels=None):
    """Join with S^0; the two poles land in distinct strata, so asymmetric
    pole perversities are expressible."""
    return join_sphere(0, base, levels)


def subdivision_map(complex_):
    """First barycentric subdivision.

    Returns (new complex, carrier) where vertex i of the new complex is the
    barycenter of old simplex i and carrier[j] is, for each new simplex j
    (a chain of old simplices), the id of the largest chain element — the old
    open simplex containing the new open simplex.
    """
    old = complex_.simplices
    n_new_vertices = len(old)
    supersets = [[] for _ in old]
    for sid, s in enumerate(old):
        sset = set(s)
        for tid, t in enumerate(old):
            if len(t) > len(s) and sset < set(t):
                supersets[sid].append(tid)
    chains = []

    def extend(chain, top_id):
        chains.append(tuple(chain))
        for nxt_id in supersets[top_id]:
            extend(chain + [nxt_id], nxt_id)

    # enumerate all chains in the face poset, depth first from each simplex
    for sid in range(len(old)):
        extend([sid], sid)
    new = SimplicialComplex(n_new_vertices, chains)
    carrier = []
    for s in new.simplices:
        carrier.append(max(s, key=lambda sid: (len(old[sid]), old[sid])))
    return new, carrier


def barycentric_subdivide(complex_, stratification):
    """Subdivide once, transporting the stratification; the result is full
    (every simplex's stratum dimension is realized on a vertex)."""
    from . import strat as strat_mod

    new, carrier = subdivision_map(complex_)
    new_strat = strat_mod.transport_stratification(stratification, new, carrier)
    return new, new_strat


def to_json_dict(complex_, levels=None, stratification=None):
    out = {
        "vertices": complex_.vertex_count,
        "simplices": [list(s) for s in complex_.simplices],
    }
    if levels is not None:
        out["n"] = levels.n
        out["levels"] = list(levels.levels)
    if stratification is not None:
        out["n"] = stratification.n
        out["strata"] = list(stratification.assignment)
        out["stratum_dims"] = [st.dim for st in stratification.strata]
        if "levels" not in out:
            out["levels"] = [
                stratification.strata[stratification.assignment[complex_.index((v,))]].dim
                for v in range(complex_.vertex_count)
            ]
    return out


def from_json_dict(data):
    """Returns (complex, levels or None, stratification or None)."""
    from . import strat as strat_mod

    cx = SimplicialComplex(data["vertices"], [tuple(s) for s in data["simplices"]])
    if list(map(list, cx.simplices)) != list(map(list, data["simplices"])):
        raise ValueError("simplices not in canonical order or not face-closed")
    levels = None
    if "levels" in data:
        levels = VertexLevelMap(data["levels"], data["n"])
    stratification = None
    if "strata" in data:
        stratification = strat_mod.Stratification.from_assignment(
            cx, data["strata"], data["n"]
        )
        got = [stratification.strata[s].dim for s in range(len(stratification.strata))]
        if got != list(data["stratum_dims"]):
            raise ValueError("stratum_dims inconsistent with the partition")
    return cx, levels, stratification


def dumps(complex_, levels=None, stratification=None):
    return json.dumps(
        to_json_dict(complex_, levels, stratification), sort_keys=True, indent=None
    )
