"""Refinement pairs, the stratum taxonomy and the simple-decomposition
algorithm.

A coarsening step merges, for each top-dimensional virtual stratum M, the
piece made of M together with the stable strata sharing its target; iterating
these simple steps factors any refinement into simple ones.  The maximal
dimension of a virtual stratum strictly drops at every step, which bounds the
number of steps.
"""

from .strat import Stratification


class NotARefinement(ValueError):
    pass


class AlreadyEqual(ValueError):
    pass


class StratumTaxonomy:
    def __init__(self, source, virtual_, v_maximal, stable, exceptional, one_exceptional):
        self.source = frozenset(source)
        self.virtual_ = frozenset(virtual_)
        self.v_maximal = frozenset(v_maximal)
        self.stable = frozenset(stable)
        self.exceptional = frozenset(exceptional)
        self.one_exceptional = frozenset(one_exceptional)

    def to_json_dict(self, strat=None):
        name = (lambda s: strat.label(s)) if strat else (lambda s: s)
        return {
            "source_minus_stable": sorted(name(s) for s in self.source - self.stable),
            "source": sorted(name(s) for s in self.source),
            "virtual": sorted(name(s) for s in self.virtual_),
            "v_maximal": sorted(name(s) for s in self.v_maximal),
            "stable": sorted(name(s) for s in self.stable),
            "exceptional": sorted(name(s) for s in self.exceptional),
            "one_exceptional": sorted(name(s) for s in self.one_exceptional),
        }


class RefinementPair:
    def __init__(self, complex_, fine, coarse, stratum_map):
        self.complex = complex_
        self.fine = fine
        self.coarse = coarse
        self.stratum_map = tuple(stratum_map)
        self._taxonomy = None

    def taxonomy(self):
        if self._taxonomy is None:
            self._taxonomy = classify(self)
        return self._taxonomy

    def is_identity(self):
        return self.fine.same_partition(self.coarse)

    def d_measure(self):
        """Max dimension of a virtual stratum; -1 when there is none.  This
        is the quantity that strictly decreases along a simple decomposition."""
        tax = self.taxonomy()
        return max((self.fine.strata[s].dim for s in tax.virtual_), default=-1)


def check_refinement(complex_, fine, coarse):
    """Build and validate the stratum map of a refinement pair.

    Verifies that the fine partition refines the coarse one, that dimensions
    are monotone and that the closure order is preserved.  The manifold
    clause of (S6) is combinatorially untestable and is not checked."""
    if fine.complex is not complex_ and fine.complex != complex_:
        raise NotARefinement("fine stratification lives on a different complex")
    if coarse.complex is not complex_ and coarse.complex != complex_:
        raise NotARefinement("coarse stratification lives on a different complex")
    if fine.n != coarse.n:
        raise NotARefinement(f"formal dimensions differ: {fine.n} != {coarse.n}")
    stratum_map = [None] * len(fine.strata)
    for sid in range(len(complex_)):
        fs, cs = fine.assignment[sid], coarse.assignment[sid]
        if stratum_map[fs] is None:
            stratum_map[fs] = cs
        elif stratum_map[fs] != cs:
            raise NotARefinement(
                f"fine stratum {fs} straddles coarse strata "
                f"{stratum_map[fs]} and {cs} (witness simplex {sid})"
            )
    for fs, cs in enumerate(stratum_map):
        if fine.strata[fs].dim > coarse.strata[cs].dim:
            raise NotARefinement(
                f"fine stratum {fs} (dim {fine.strata[fs].dim}) maps into "
                f"coarse stratum {cs} (dim {coarse.strata[cs].dim})"
            )
    for a, b in fine.order_pairs():
        ia, ib = stratum_map[a], stratum_map[b]
        if ia != ib and not coarse.leq(ia, ib):
            raise NotARefinement(
                f"order not preserved: {a} < {b} in the fine poset but "
                f"{ia} !<= {ib} in the coarse one"
            )
    return RefinementPair(complex_, fine, coarse, stratum_map)


def classify(pair):
    """Stratum taxonomy of a refinement.

    Source strata keep their dimension in the target; virtual strata lose it.
    The v-maximal ones are the virtual strata of maximal dimension; they are
    the first merged away.  Stable strata are source strata absorbed by the
    merge of some v-maximal stratum."""
    fine, coarse = pair.fine, pair.coarse
    smap = pair.stratum_map
    source, virtual_ = set(), set()
    for s in range(len(fine.strata)):
        if fine.strata[s].dim == coarse.strata[smap[s]].dim:
            source.add(s)
        else:
            virtual_.add(s)
    vmax_dim = max((fine.strata[s].dim for s in virtual_), default=None)
    v_maximal = {s for s in virtual_ if fine.strata[s].dim == vmax_dim}
    stable = set()
    for s in source:
        for m in v_maximal:
            if smap[m] == smap[s] and fine.leq(m, s):
                stable.add(s)
                break
    exceptional = {
        s
        for s in range(len(fine.strata))
        if not fine.strata[s].regular and coarse.strata[smap[s]].regular
    }
    one_exceptional = {s for s in exceptional if fine.codim(s) == 1}
    return StratumTaxonomy(source, virtual_, v_maximal, stable, exceptional, one_exceptional)


def merged_piece(pair, m):
    """Strata melting into one new stratum alongside the v-maximal stratum m:
    the stable or v-maximal strata sharing its target."""
    tax = pair.taxonomy()
    if m not in tax.v_maximal:
        raise ValueError(f"stratum {m} is not v-maximal")
    members = sorted(
        q for q in (tax.stable | tax.v_maximal) if pair.stratum_map[q] == pair.stratum_map[m]
    )
    _assert_piece_shape(pair, m, members)
    return members


def _assert_piece_shape(pair, m, members):
    """The merged piece is connected and has the dimension of its target."""
    fine, cx = pair.fine, pair.complex
    simplices = set()
    for q in members:
        simplices.update(fine.strata[q].simplices)
    target_dim = pair.coarse.strata[pair.stratum_map[m]].dim
    got = max(len(cx.simplices[s]) - 1 for s in simplices)
    if got != target_dim:
        raise AssertionError(
            f"merged piece of stratum {m} has dimension {got}, target {target_dim}"
        )
    parent = {s: s for s in simplices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sid in simplices:
        for f in cx.faces_of(sid):
            if f in parent:
                ra, rb = find(sid), find(f)
                if ra != rb:
                    parent[ra] = rb
    if len({find(s) for s in simplices}) != 1:
        raise AssertionError(f"merged piece of stratum {m} is not connected")


def simple_step(pair):
    """One coarsening step: replace every merge class with a single stratum.

    Returns (intermediate stratification R, fine-side pair S < R, coarse-side
    pair R < T).  The first factor is always simple (its virtual strata form
    an antichain) and the d-measure strictly decreases on the second."""
    if pair.is_identity():
        raise AlreadyEqual("the two stratifications already coincide")
    fine, coarse, cx = pair.fine, pair.coarse, pair.complex
    tax = pair.taxonomy()
    merged_targets = {}
    for m in sorted(tax.v_maximal):
        merged_targets.setdefault(pair.stratum_map[m], m)
    merged_strata = set()
    groups = []
    for _, m in sorted(merged_targets.items(), key=lambda kv: kv[1]):
        members = merged_piece(pair, m)
        merged_strata.update(members)
        simplices = []
        for q in members:
            simplices.extend(fine.strata[q].simplices)
        groups.append(simplices)
    for s in range(len(fine.strata)):
        if s not in merged_strata:
            groups.append(sorted(fine.strata[s].simplices))
    mid = Stratification.from_partition(cx, groups, fine.n)
    step = check_refinement(cx, fine, mid)
    rest = check_refinement(cx, mid, coarse)
    step_tax = step.taxonomy()
    if step.fine.depth(step_tax.virtual_) != 0:
        raise AssertionError("coarsening step is not simple")
    if not rest.is_identity() and rest.d_measure() >= pair.d_measure():
        raise AssertionError("d-measure did not decrease")
    return mid, step, rest


def simple_decomposition(pair):
    """Factor a refinement into simple steps; empty for the identity pair."""
    steps = []
    current = pair
    while not current.is_identity():
        _, step, rest = simple_step(current)
        steps.append(step)
        current = rest
    return steps
