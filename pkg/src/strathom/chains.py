"""Perverse degrees, allowability, and the intersection and tame chain
complexes of a full stratified complex.

Fullness means every simplex realizes its stratum dimension on a vertex; then
the part of a simplex at filtration level <= i is the face spanned by its
vertices of level <= i, which is what the perverse degree measures.  One
barycentric subdivision always repairs a non-full stratification.

Degree-k generators are an exact kernel basis of "allowable chains with
allowable boundary": over Z a Hermite-reduced basis of an integer kernel
(automatically a direct summand), over a prime field a reduced-echelon kernel
basis.  Boundary matrices are re-expressed in these bases exactly.
"""

from .matrixops import IntMatrix
from . import _kernels as kernels
from .perversity import NINF, ext_add

RING_Z = "Z"


def field(p):
    return ("F", p)


def is_field(ring):
    return isinstance(ring, tuple)


def ring_label(ring):
    return "Z" if ring == RING_Z else f"F{ring[1]}"


def parse_ring(text):
    if text == "Z":
        return RING_Z
    if text.startswith("Fq:"):
        text = "F" + text[3:]
    if text.startswith("F"):
        p = int(text[1:])
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        return field(p)
    raise ValueError(f"unknown ring {text!r}; use Z or F<prime>")


class FullnessError(ValueError):
    """Raised when a stratification is not full; callers should pass the
    complex through barycentric_subdivide first."""


def fullness_violations(strat):
    cached = getattr(strat, "_fullness_violations", None)
    if cached is None:
        cx = strat.complex
        cached = []
        for sid, s in enumerate(cx.simplices):
            if strat.stratum_dim(sid) != max(strat.vertex_level(v) for v in s):
                cached.append(sid)
        strat._fullness_violations = cached
    return cached


def require_full(strat):
    bad = fullness_violations(strat)
    if bad:
        witness = strat.complex.simplices[bad[0]]
        raise FullnessError(
            f"stratification is not full at simplex {witness} (and {len(bad) - 1} more); "
            "apply barycentric_subdivide first"
        )


class FilteredSimplexView:
    """Join-prefix data of one simplex: dims[i] is the dimension of its part
    at filtration level <= i (-1 when empty)."""

    __slots__ = ("sid", "dims", "regular")

    def __init__(self, sid, dims, regular):
        self.sid = sid
        self.dims = dims
        self.regular = regular


def filtered_view(strat, sid):
    s = strat.complex.simplices[sid]
    n = strat.n
    counts = [0] * (n + 1)
    for v in s:
        counts[strat.vertex_level(v)] += 1
    dims = []
    total = 0
    for i in range(n + 1):
        total += counts[i]
        dims.append(total - 1)
    return FilteredSimplexView(sid, dims, dims[n] > (dims[n - 1] if n else -1))


def _met_strata(strat, sid):
    """Strata carried by the faces of a simplex (including itself)."""
    met = {strat.stratum_of(sid)}
    for f in strat.complex.faces_of(sid):
        met.add(strat.stratum_of(f))
    return met


def perverse_degree(strat, sid, stratum_id):
    """dim of the simplex part at the stratum's level, or -inf when the
    stratum misses the simplex."""
    require_full(strat)
    if stratum_id not in _met_strata(strat, sid):
        return NINF
    return filtered_view(strat, sid).dims[strat.strata[stratum_id].dim]


def allowability(strat, p, sid):
    """{'allowable': bool, 'tame': bool} for one simplex under perversity p."""
    require_full(strat)
    view = filtered_view(strat, sid)
    met = _met_strata(strat, sid)
    dim_s = len(strat.complex.simplices[sid]) - 1
    allowable = True
    for st in strat.singular_ids:
        if st not in met:
            continue
        bound = ext_add(dim_s - strat.codim(st), p(st))
        if not view.dims[strat.strata[st].dim] <= bound:
            allowable = False
            break
    return {"allowable": allowable, "tame": allowable and view.regular}


class ChainComplexExact:
    """Graded free modules with exact boundary matrices.

    boundaries[k] maps degree k to degree k-1 (boundaries[0] has zero rows).
    generators[k] expresses the degree-k basis as integer vectors over the
    labelled ambient simplices."""

    def __init__(self, ring, dims, boundaries, labels, generators):
        self.ring = ring
        self.dims = dims
        self.boundaries = boundaries
        self.labels = labels
        self.generators = generators

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def d_squared_ok(self):
        cached = getattr(self, "_d2_ok", None)
        if cached is None:
            cached = True
            for k in range(1, len(self.boundaries)):
                prod = self.boundaries[k - 1].mul(self.boundaries[k])
                if is_field(self.ring):
                    prod = prod.mod(self.ring[1])
                if not prod.is_zero():
                    cached = False
                    break
            self._d2_ok = cached
        return cached

    def to_json_dict(self):
        return {
            "ring": ring_label(self.ring),
            "dims": list(self.dims),
            "boundaries": [b.to_lists() for b in self.boundaries],
        }


def _boundary_matrix(cx, row_ids, col_ids, keep_face):
    index_of = {sid: i for i, sid in enumerate(row_ids)}
    mat = IntMatrix(len(row_ids), len(col_ids))
    for j, sid in enumerate(col_ids):
        s = cx.simplices[sid]
        if len(s) == 1:
            continue
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            fid = cx.index(face)
            if keep_face(fid) and fid in index_of:
                mat[index_of[fid], j] = (-1) ** i
    return mat


def _kernel_over(ring, mat):
    if mat.ncols == 0:
        return IntMatrix(0, 0)
    if mat.nrows == 0:
        return IntMatrix.identity(mat.ncols)
    if is_field(ring):
        cols = kernels.modp_kernel(mat.mod(ring[1]).rows, mat.nrows, mat.ncols, ring[1])
    else:
        cols = kernels.kernel_basis(mat.rows, mat.nrows, mat.ncols)
    width = len(cols[0]) if cols else 0
    return IntMatrix(mat.ncols, width, [list(r) for r in cols])


def _solve_over(ring, basis, rhs):
    """X with basis @ X = rhs, exact in the given ring."""
    if basis.ncols == 0:
        if not (rhs.is_zero() if ring == RING_Z else rhs.mod(ring[1]).is_zero()):
            raise ArithmeticError("boundary leaves the generated lattice")
        return IntMatrix(0, rhs.ncols)
    if is_field(ring):
        p = ring[1]
        aug = IntMatrix(
            basis.nrows,
            basis.ncols + rhs.ncols,
            [basis.rows[i] + rhs.rows[i] for i in range(basis.nrows)],
        ).mod(p)
        rank, pivots, red = kernels.modp_rref(aug.rows, aug.nrows, aug.ncols, p)
        x = IntMatrix(basis.ncols, rhs.ncols)
        for i, pj in enumerate(pivots):
            if pj >= basis.ncols:
                raise ArithmeticError("inconsistent solve over field")
            for c in range(rhs.ncols):
                x[pj, c] = red[i][basis.ncols + c] % p
        return x
    sol = kernels.solve_columns(basis.rows, basis.nrows, basis.ncols, rhs.rows, rhs.ncols)
    return IntMatrix(basis.ncols, rhs.ncols, [list(r) for r in sol])


def _build_complex(strat, ring, kept, face_pred, forbidden_pred):
    """Shared constructor: degree-k space = kept chains whose (filtered)
    boundary has no component on forbidden simplices."""
    cx = strat.complex
    by_dim = [cx.simplices_of_dim(k) for k in range(cx.dim + 1)]
    kept_ids = [[sid for sid in ids if kept[sid]] for ids in by_dim]
    dims = []
    labels = []
    generators = []
    boundaries = []
    prev_gen = None
    for k in range(cx.dim + 1):
        cols = kept_ids[k]
        if k == 0:
            forb = []
        else:
            forb = [sid for sid in by_dim[k - 1] if forbidden_pred(sid)]
        m = _boundary_matrix(cx, forb, cols, face_pred)
        gen = _kernel_over(ring, m)
        labels.append(cols)
        generators.append(gen)
        dims.append(gen.ncols)
        if k == 0:
            boundaries.append(IntMatrix(0, gen.ncols))
        else:
            rows_prev = kept_ids[k - 1]
            d_kept = _boundary_matrix(cx, rows_prev, cols, face_pred)
            rhs = d_kept.mul(gen)
            if is_field(ring):
                rhs = rhs.mod(ring[1])
            boundaries.append(_solve_over(ring, prev_gen, rhs))
        prev_gen = gen
    complex_ = ChainComplexExact(ring, dims, boundaries, labels, generators)
    if not complex_.d_squared_ok():
        raise AssertionError("constructed complex fails d^2 = 0")
    return complex_


def intersection_complex(strat, p, ring=RING_Z):
    """Chains on allowable simplices whose boundary is allowable."""
    require_full(strat)
    cx = strat.complex
    flags = [allowability(strat, p, sid) for sid in range(len(cx))]
    kept = [f["allowable"] for f in flags]
    return _build_complex(
        strat,
        ring,
        kept,
        lambda fid: True,
        lambda sid: not kept[sid],
    )


def tame_complex(strat, p, ring=RING_Z):
    """Chains on tame simplices whose regular boundary is tame; the
    differential drops the non-regular faces."""
    require_full(strat)
    cx = strat.complex
    n = strat.n
    flags = [allowability(strat, p, sid) for sid in range(len(cx))]
    tame = [f["tame"] for f in flags]
    regular = [strat.stratum_dim(sid) == n for sid in range(len(cx))]
    return _build_complex(
        strat,
        ring,
        tame,
        lambda fid: regular[fid],
        lambda sid: regular[sid] and not tame[sid],
    )


def full_chain_complex(strat, ring=RING_Z):
    """Ordinary simplicial chains (the trivially-stratified special case)."""
    cx = strat.complex
    return _build_complex(
        strat, ring, [True] * len(cx), lambda fid: True, lambda sid: False
    )
