"""Stratifications as validated partitions of the open simplices.

A stratification is stored as a simplex partition rather than a level map:
coarsenings produced by the simple-decomposition step need not be
level-induced.  The validator checks the frontier condition (S3), dimension
monotonicity (S4) and dimension consistency; local finiteness (S1) and
bounded dimension (S5) are automatic on finite complexes.  Manifold-ness of
strata (S2) is a user obligation, not checked here.
"""


class Stratum:
    __slots__ = ("id", "dim", "simplices", "regular")

    def __init__(self, sid, dim, simplices, regular):
        self.id = sid
        self.dim = dim
        self.simplices = frozenset(simplices)
        self.regular = regular

    def __repr__(self):
        kind = "regular" if self.regular else "singular"
        return f"Stratum({self.id}, dim={self.dim}, {kind}, {len(self.simplices)} simplices)"


class ValidationReport:
    def __init__(self):
        self.violations = []
        self.notes = []

    def add(self, axiom, message, witness=None):
        self.violations.append({"axiom": axiom, "message": message, "witness": witness})

    @property
    def ok(self):
        return not self.violations

    def to_json_dict(self):
        return {"ok": self.ok, "violations": self.violations, "notes": self.notes}


class Stratification:
    def __init__(self, complex_, assignment, strata, n, labels=None):
        self.complex = complex_
        self.assignment = tuple(assignment)
        self.strata = strata
        self.n = n
        self.labels = dict(labels) if labels else {}
        self._closure = None
        self._order = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_partition(cls, complex_, groups, n, labels=None):
        """groups: iterable of simplex-id collections covering the complex.
        Stratum ids are assigned by smallest member simplex, so the result is
        independent of the input order."""
        groups = [sorted(set(g)) for g in groups if g]
        seen = [None] * len(complex_)
        for gi, g in enumerate(groups):
            for sid in g:
                if seen[sid] is not None:
                    raise ValueError(f"simplex {sid} in two strata")
                seen[sid] = gi
        if any(v is None for v in seen):
            missing = seen.index(None)
            raise ValueError(f"simplex {missing} not covered by any stratum")
        order = sorted(range(len(groups)), key=lambda gi: groups[gi][0])
        strata = []
        assignment = [0] * len(complex_)
        for new_id, gi in enumerate(order):
            dim = max(len(complex_.simplices[sid]) - 1 for sid in groups[gi])
            strata.append(Stratum(new_id, dim, groups[gi], dim == n))
            for sid in groups[gi]:
                assignment[sid] = new_id
        return cls(complex_, assignment, strata, n, labels)

    @classmethod
    def from_assignment(cls, complex_, assignment, n, labels=None):
        groups = {}
        for sid, st in enumerate(assignment):
            groups.setdefault(st, []).append(sid)
        ordered = [groups[k] for k in sorted(groups)]
        return cls.from_partition(complex_, ordered, n, labels)

    # -- basic accessors -------------------------------------------------

    def stratum_of(self, sid):
        return self.assignment[sid]

    def stratum_dim(self, sid):
        return self.strata[self.assignment[sid]].dim

    def vertex_level(self, v):
        levels = getattr(self, "_vertex_levels", None)
        if levels is None:
            levels = [
                self.strata[self.assignment[self.complex.index((u,))]].dim
                for u in range(self.complex.vertex_count)
            ]
            self._vertex_levels = levels
        return levels[v]

    @property
    def singular_ids(self):
        return [st.id for st in self.strata if not st.regular]

    @property
    def regular_ids(self):
        return [st.id for st in self.strata if st.regular]

    def codim(self, stratum_id):
        return self.n - self.strata[stratum_id].dim

    def label(self, stratum_id):
        return self.labels.get(stratum_id, f"#{stratum_id}")

    def with_labels(self, labels):
        return Stratification(self.complex, self.assignment, self.strata, self.n, labels)

    def same_partition(self, other):
        if self.complex is not other.complex and self.complex != other.complex:
            return False
        remap = {}
        for a, b in zip(self.assignment, other.assignment):
            if remap.setdefault(a, b) != b:
                return False
        return len(remap) == len(self.strata) == len(other.strata)

    # -- closure poset ----------------------------------------------------

    def _closure_sets(self):
        """Per stratum: ids of all faces of its simplices (its closed set)."""
        if self._closure is None:
            cx = self.complex
            out = []
            for st in self.strata:
                closed = set(st.simplices)
                for sid in st.simplices:
                    closed.update(cx.faces_of(sid))
                out.append(closed)
            self._closure = out
        return self._closure

    def order_pairs(self):
        """Strict order a < b meaning stratum a lies in the closure of b."""
        if self._order is None:
            closures = self._closure_sets()
            pairs = set()
            for b, st_b in enumerate(self.strata):
                cb = closures[b]
                for a, st_a in enumerate(self.strata):
                    if a != b and any(s in cb for s in st_a.simplices):
                        pairs.add((a, b))
            self._order = pairs
        return self._order

    def leq(self, a, b):
        return a == b or (a, b) in self.order_pairs()

    def depth(self, subset=None):
        """Longest chain length (edge count) within the given strata subset."""
        ids = list(range(len(self.strata))) if subset is None else sorted(subset)
        pairs = self.order_pairs()
        ids.sort(key=lambda i: self.strata[i].dim)
        best = {i: 0 for i in ids}
        for b in ids:
            for a in ids:
                if (a, b) in pairs and best[a] + 1 > best[b]:
                    best[b] = best[a] + 1
        return max(best.values(), default=0)

    # -- validation --------------------------------------------------------

    def validate(self):
        report = ValidationReport()
        cx = self.complex
        for st in self.strata:
            if not st.simplices:
                report.add("partition", f"stratum {st.id} is empty", st.id)
                continue
            got = max(len(cx.simplices[s]) - 1 for s in st.simplices)
            if got != st.dim:
                report.add(
                    "dim-consistency",
                    f"stratum {st.id} has dim {st.dim} but max member dimension {got}",
                    st.id,
                )
            if st.dim > self.n:
                report.add("dim-consistency", f"stratum {st.id} exceeds formal dimension", st.id)
            # connectivity under "shares the stratum with one of its faces"
            parent = {s: s for s in st.simplices}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for sid in st.simplices:
                for f in cx.faces_of(sid):
                    if f in parent:
                        ra, rb = find(sid), find(f)
                        if ra != rb:
                            parent[ra] = rb
            roots = {find(s) for s in st.simplices}
            if len(roots) > 1:
                report.add("connectivity", f"stratum {st.id} has {len(roots)} components", st.id)
        closures = self._closure_sets()
        for b, st_b in enumerate(self.strata):
            cb = closures[b]
            for a, st_a in enumerate(self.strata):
                if a == b:
                    continue
                meets = [s for s in st_a.simplices if s in cb]
                if meets:
                    outside = [s for s in st_a.simplices if s not in cb]
                    if outside:
                        report.add(
                            "S3",
                            f"stratum {a} meets the closure of {b} but is not contained in it",
                            {"strata": (a, b), "inside": meets[0], "outside": outside[0]},
                        )
                    if st_a.dim >= st_b.dim:
                        report.add(
                            "S4",
                            f"stratum {a} (dim {st_a.dim}) lies under stratum {b} (dim {st_b.dim})",
                            {"strata": (a, b)},
                        )
        report.notes.append("S1/S5 hold automatically for finite complexes")
        report.notes.append("S2 (manifold strata) and conical charts are not checked")
        return report


class LevelClassError(ValueError):
    pass


def strata_from_levels(complex_, levels):
    """Strata as connected components of the level classes.

    The level of a simplex is the max of its vertex levels; class-i simplices
    are joined when one is a face of the other.  Fails when some class has
    geometric dimension different from its level (not a valid filtration)."""
    if complex_.vertex_count and len(levels.levels) != complex_.vertex_count:
        raise ValueError("level map size mismatch")
    cx = complex_
    lev = [levels.simplex_level(s) for s in cx.simplices]
    parent = list(range(len(cx)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sid in range(len(cx)):
        for f in cx.faces_of(sid):
            if lev[f] == lev[sid]:
                ra, rb = find(sid), find(f)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for sid in range(len(cx)):
        groups.setdefault(find(sid), []).append(sid)
    for members in groups.values():
        level = lev[members[0]]
        top = max(len(cx.simplices[s]) - 1 for s in members)
        if top != level:
            witness = max(members, key=lambda s: len(cx.simplices[s]))
            raise LevelClassError(
                f"level-{level} class has geometric dimension {top} "
                f"(simplex {cx.simplices[witness]}); not a valid filtration"
            )
    return Stratification.from_partition(cx, groups.values(), levels.n)


def transport_stratification(stratification, new_complex, carrier):
    """Carry a stratification through a subdivision map; stratum ids, dims and
    labels are preserved (the barycenter of a simplex inherits its stratum)."""
    groups = [[] for _ in stratification.strata]
    for new_sid in range(len(new_complex)):
        groups[stratification.assignment[carrier[new_sid]]].append(new_sid)
    strata = []
    assignment = [0] * len(new_complex)
    for old in stratification.strata:
        members = groups[old.id]
        if not members:
            raise ValueError(f"stratum {old.id} lost in transport")
        dim = max(len(new_complex.simplices[s]) - 1 for s in members)
        strata.append(Stratum(old.id, dim, members, dim == stratification.n))
        for sid in members:
            assignment[sid] = old.id
    return Stratification(
        new_complex, assignment, strata, stratification.n, stratification.labels
    )
