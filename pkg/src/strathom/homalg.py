"""Exact homology: Smith normal form over Z, rank counting over prime fields,
Hom-dual cohomology and the universal-coefficients consistency check."""

from .matrixops import IntMatrix
from . import _kernels as kernels
from .chains import is_field, ring_label


class HomologySummary:
    """Per-degree betti rank and torsion coefficients (divisibility chain)."""

    def __init__(self, ring, groups):
        self.ring = ring
        self.groups = {int(k): (int(b), tuple(int(t) for t in tor)) for k, (b, tor) in groups.items()}

    def betti(self, k):
        return self.groups.get(k, (0, ()))[0]

    def torsion(self, k):
        return self.groups.get(k, (0, ()))[1]

    @property
    def top_degree(self):
        live = [k for k, (b, t) in self.groups.items() if b or t]
        return max(live, default=-1)

    def betti_vector(self, upto=None):
        top = self.top_degree if upto is None else upto
        return tuple(self.betti(k) for k in range(top + 1))

    def __eq__(self, other):
        if not isinstance(other, HomologySummary):
            return NotImplemented
        top = max(self.top_degree, other.top_degree)
        return all(
            self.betti(k) == other.betti(k) and self.torsion(k) == other.torsion(k)
            for k in range(top + 1)
        )

    def first_difference(self, other):
        top = max(self.top_degree, other.top_degree, len(self.groups), len(other.groups))
        for k in range(top + 1):
            if self.betti(k) != other.betti(k) or self.torsion(k) != other.torsion(k):
                return k
        return None

    def to_json_dict(self):
        out = {
            str(k): {"betti": b, "torsion": list(t)}
            for k, (b, t) in sorted(self.groups.items())
        }
        out["ring"] = ring_label(self.ring)
        if getattr(self, "theory", None):
            out["theory"] = self.theory
        return out

    def __repr__(self):
        parts = []
        for k in range(self.top_degree + 1):
            b, t = self.betti(k), self.torsion(k)
            parts.append(f"{k}: r{b}" + (f"+{list(t)}" if t else ""))
        return "H{" + ", ".join(parts) + "}"


def smith_normal_form(mat):
    """(U, D, V) with U @ M @ V = D diagonal, U and V unimodular.  The
    identity is verified before returning."""
    diag, rank, u, v = kernels.snf(mat.rows, mat.nrows, mat.ncols, transforms=True)
    um = IntMatrix(mat.nrows, mat.nrows, u)
    vm = IntMatrix(mat.ncols, mat.ncols, v)
    d = IntMatrix(mat.nrows, mat.ncols)
    for i, val in enumerate(diag):
        d[i, i] = val
    if um.mul(mat).mul(vm) != d:
        raise AssertionError("Smith normal form identity U M V = D failed")
    for i in range(len(diag) - 1):
        if diag[i] and diag[i + 1] and diag[i + 1] % diag[i] != 0:
            raise AssertionError("invariant factors do not form a divisibility chain")
    return um, d, vm


def invariant_factors(mat):
    diag, rank, _, _ = kernels.snf(mat.rows, mat.nrows, mat.ncols, transforms=False)
    return [d for d in diag if d != 0]


def _boundary_factors(complex_):
    """Invariant factors of every boundary matrix, cached on the complex.
    The dual differentials are transposes, which have the same factors, so
    homology and cohomology share one Smith reduction per matrix."""
    cache = getattr(complex_, "_factor_cache", None)
    if cache is None:
        cache = [invariant_factors(b) for b in complex_.boundaries]
        complex_._factor_cache = cache
    return cache


def _boundary_ranks_modp(complex_):
    cache = getattr(complex_, "_rank_cache", None)
    if cache is None:
        cache = [_rank(complex_.ring, b) for b in complex_.boundaries]
        complex_._rank_cache = cache
    return cache


def _rank(ring, mat):
    if mat.nrows == 0 or mat.ncols == 0:
        return 0
    if is_field(ring):
        return kernels.modp_rank(mat.mod(ring[1]).rows, mat.nrows, mat.ncols, ring[1])
    diag, rank, _, _ = kernels.snf(mat.rows, mat.nrows, mat.ncols, transforms=False)
    return rank


def homology(complex_):
    """Betti ranks and torsion per degree from the boundary matrices."""
    if not complex_.d_squared_ok():
        raise ValueError("boundary matrices do not satisfy d^2 = 0")
    ring = complex_.ring
    top = complex_.top_degree
    groups = {}
    if is_field(ring):
        ranks = _boundary_ranks_modp(complex_) + [0]
        for k in range(top + 1):
            groups[k] = (complex_.dims[k] - ranks[k] - ranks[k + 1], ())
    else:
        factors = _boundary_factors(complex_) + [[]]
        for k in range(top + 1):
            betti = complex_.dims[k] - len(factors[k]) - len(factors[k + 1])
            torsion = tuple(d for d in factors[k + 1] if d > 1)
            groups[k] = (betti, torsion)
    return HomologySummary(ring, groups)


def cohomology(complex_):
    """Homology of the Hom-dual complex; exact for finitely generated chains,
    so this realizes Hom-dualization on the nose."""
    if not complex_.d_squared_ok():
        raise ValueError("boundary matrices do not satisfy d^2 = 0")
    ring = complex_.ring
    top = complex_.top_degree
    # delta^k is the transpose of boundary_{k+1}, with the same rank and
    # invariant factors, so the cached Smith data serves both directions
    groups = {}
    if is_field(ring):
        ranks = _boundary_ranks_modp(complex_) + [0]
        for k in range(top + 1):
            groups[k] = (complex_.dims[k] - ranks[k + 1] - ranks[k], ())
    else:
        factors = _boundary_factors(complex_) + [[]]
        for k in range(top + 1):
            betti = complex_.dims[k] - len(factors[k + 1]) - len(factors[k])
            torsion = tuple(d for d in factors[k] if d > 1)
            groups[k] = (betti, torsion)
    return HomologySummary(ring, groups)


def uct_check(hom, coh):
    """Universal coefficients over Z: cohomology betti matches homology betti
    and degree-k cohomology torsion is degree-(k-1) homology torsion."""
    if is_field(hom.ring) or is_field(coh.ring):
        raise ValueError("universal-coefficients check needs integral summaries")
    top = max(hom.top_degree, coh.top_degree)
    for k in range(top + 1):
        if coh.betti(k) != hom.betti(k):
            return False, k
        prev = hom.torsion(k - 1) if k > 0 else ()
        if coh.torsion(k) != prev:
            return False, k
    return True, None
