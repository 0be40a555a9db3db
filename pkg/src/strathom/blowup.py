"""Blown-up intersection cochains over a prime field.

The local model on a filtered simplex D = D_0 * ... * D_n is the tensor
product of the cochain complexes of the cones c(D_i) (i < n) and of D_n; its
basis elements are tuples ((F_0, e_0), ..., (F_{n-1}, e_{n-1}), F_n) with F_i
a face of D_i or empty (empty forces e_i = 1 below the top), F_n nonempty.
A global cochain assigns one local element to every regular simplex,
compatibly under restriction to regular faces.

Since restriction sends a basis tuple to the same tuple (or to zero when it
no longer fits), a compatible family is determined by one coefficient per
"cell": a tuple whose support F_0 u ... u F_n is a simplex of the complex.
The global complex used here has exactly those cells as basis; restriction
compatibility holds by construction, and higher-codimension compatibility is
automatic because cell coefficients are shared across every simplex the cell
fits in.
"""

from .matrixops import IntMatrix
from . import _kernels as kernels
from .homalg import HomologySummary
from .chains import require_full, field
from .perversity import INF, NINF

DEFAULT_CAP = 200_000


class ComplexityCapExceeded(ValueError):
    pass


def _level_parts(strat, simplex):
    parts = [[] for _ in range(strat.n + 1)]
    for v in simplex:
        parts[strat.vertex_level(v)].append(v)
    return [tuple(p) for p in parts]


class BlowupCell:
    """One global basis element: a support simplex plus the cone flags."""

    __slots__ = ("support", "eps", "degree", "factor_degrees")

    def __init__(self, support, eps, parts):
        self.support = support
        self.eps = eps
        fdeg = []
        n = len(parts) - 1
        for i in range(n):
            fdeg.append(len(parts[i]) - 1 + eps[i] if parts[i] else 0)
        fdeg.append(len(parts[n]) - 1)
        self.factor_degrees = tuple(fdeg)
        self.degree = sum(fdeg)

    def key(self):
        return (self.support, self.eps)


class BlowupComplex:
    """Global blown-up cochain complex of a full stratified complex; the
    perversity enters later, through coordinate conditions."""

    def __init__(self, strat, cap=DEFAULT_CAP):
        require_full(strat)
        self.strat = strat
        cx = strat.complex
        n = strat.n
        self.n = n
        singular = strat.singular_ids
        self.singular = singular
        sing_pos = {s: i for i, s in enumerate(singular)}

        regular_sids = [
            sid for sid in range(len(cx)) if strat.stratum_dim(sid) == n
        ]
        self._check_cap(regular_sids, cap)

        # strata met by each regular simplex, then by each of its faces
        met = {}
        for sid in regular_sids:
            mask = 0
            for g in [sid] + cx.faces_of(sid):
                st = strat.stratum_of(g)
                if st in sing_pos:
                    mask |= 1 << sing_pos[st]
            met[sid] = mask
        self.met_support = {}
        for sid in regular_sids:
            for g in [sid] + cx.faces_of(sid):
                self.met_support[g] = self.met_support.get(g, 0) | met[sid]

        self.parts = {}
        cells = []
        for sid in regular_sids:
            parts = _level_parts(strat, cx.simplices[sid])
            self.parts[sid] = parts
            free = [i for i in range(n) if parts[i]]
            for mask in range(1 << len(free)):
                eps = [1] * n
                for b, i in enumerate(free):
                    eps[i] = (mask >> b) & 1
                cells.append(BlowupCell(sid, tuple(eps), parts))
        cells.sort(key=lambda c: (c.degree, c.support, c.eps))
        self.cells = cells
        self.index = {c.key(): i for i, c in enumerate(cells)}
        self.by_degree = {}
        for i, c in enumerate(cells):
            self.by_degree.setdefault(c.degree, []).append(i)
        self.top_degree = max(self.by_degree, default=-1)

        # vertex extensions: support -> [(vertex, extended support id)]
        self.extensions = {sid: [] for sid in regular_sids}
        for tid, t in enumerate(cx.simplices):
            if strat.stratum_dim(tid) != n or len(t) == 1:
                continue
            for i, v in enumerate(t):
                f = t[:i] + t[i + 1 :]
                fid = cx.index(f)
                if fid in self.extensions:
                    self.extensions[fid].append((v, tid))
        self._differential = None

    def _check_cap(self, regular_sids, cap):
        total = 0
        cx = self.strat.complex
        for sid in regular_sids:
            parts = _level_parts(self.strat, cx.simplices[sid])
            size = 1
            for i in range(self.n):
                size *= (1 << (len(parts[i]) + 1)) - 1
            size *= (1 << len(parts[self.n])) - 1
            total += size
        if total > cap:
            raise ComplexityCapExceeded(
                f"total local basis dimension {total} exceeds desk-scale cap {cap};"
                " raise the cap explicitly to proceed"
            )

    # -- differential ----------------------------------------------------

    def differential(self):
        """Sparse d as {cell index: [(target cell index, coefficient), ...]}."""
        if self._differential is not None:
            return self._differential
        out = {}
        for i, c in enumerate(self.cells):
            out[i] = self._cofaces(c)
        self._differential = out
        return out

    def _koszul(self, cell, i):
        s = sum(cell.factor_degrees[:i])
        return -1 if s % 2 else 1

    def _cofaces(self, cell):
        cx = self.strat.complex
        n = self.n
        parts = self.parts[cell.support]
        targets = []
        # apex flips: (F,0) -> (F,1) with factor sign (-1)^{|F|}
        for i in range(n):
            if parts[i] and cell.eps[i] == 0:
                eps2 = list(cell.eps)
                eps2[i] = 1
                j = self.index[(cell.support, tuple(eps2))]
                sgn = self._koszul(cell, i) * (-1 if len(parts[i]) % 2 else 1)
                targets.append((j, sgn))
        # vertex insertions into the factor of the new vertex's level
        for v, tid in self.extensions[cell.support]:
            lev = self.strat.vertex_level(v)
            eps2 = list(cell.eps)
            # a previously-empty low factor gains its first vertex; e stays 1
            key = (tid, tuple(eps2))
            j = self.index[key]
            pos = sum(1 for w in parts[lev] if w < v)
            sgn = self._koszul(cell, lev) * (-1 if pos % 2 else 1)
            targets.append((j, sgn))
        return targets

    def d_squared_ok(self):
        d = self.differential()
        for i in d:
            acc = {}
            for j, c1 in d[i]:
                for k, c2 in d[j]:
                    acc[k] = acc.get(k, 0) + c1 * c2
            if any(v != 0 for v in acc.values()):
                return False
        return True

    # -- perverse degrees and allowability --------------------------------

    def cell_perverse_degree(self, i, codim):
        """l-perverse degree of cell i for l = codim (of some stratum)."""
        cell = self.cells[i]
        s = self.n - codim
        parts = self.parts[cell.support]
        if not parts[s] or cell.eps[s] == 1:
            return NINF
        return sum(cell.factor_degrees[s + 1 :])

    def cell_allowed(self, i, p):
        """Whether the coordinate may appear in a p-allowable cochain."""
        cell = self.cells[i]
        mask = self.met_support[cell.support]
        for pos, st in enumerate(self.singular):
            if not (mask >> pos) & 1:
                continue
            bound = p(st)
            if bound == INF:
                continue
            if not self.cell_perverse_degree(i, self.strat.codim(st)) <= bound:
                return False
        return True


def local_blowup(strat, sid):
    """Local model on one regular filtered simplex: basis tuples, one
    differential matrix per degree, and the l-perverse degree table.

    Returned basis entries are (faces, eps, degree) with faces[i] the chosen
    face of the i-th join factor (empty tuple allowed below the top)."""
    require_full(strat)
    cx = strat.complex
    n = strat.n
    if strat.stratum_dim(sid) != n:
        raise ValueError("local blow-up is defined on regular simplices only")
    parts = _level_parts(strat, cx.simplices[sid])

    def subsets(vs):
        out = [()]
        for v in vs:
            out += [s + (v,) for s in out]
        return out

    basis = []

    def extend(i, faces, eps):
        if i == n:
            for f in subsets(parts[n]):
                if f:
                    basis.append((tuple(faces) + (f,), tuple(eps)))
            return
        for f in subsets(parts[i]):
            if f:
                extend(i + 1, faces + [f], eps + [0])
                extend(i + 1, faces + [f], eps + [1])
            else:
                extend(i + 1, faces + [f], eps + [1])

    extend(0, [], [])

    def degree(faces, eps):
        total = 0
        for i in range(n):
            total += (len(faces[i]) - 1 + eps[i]) if faces[i] else 0
        return total + len(faces[n]) - 1

    entries = sorted(
        (degree(f, e), f, e) for f, e in basis
    )
    index = {(f, e): i for i, (dgr, f, e) in enumerate(entries)}

    def koszul(faces, eps, i):
        s = 0
        for j in range(i):
            s += (len(faces[j]) - 1 + eps[j]) if faces[j] else 0
        return -1 if s % 2 else 1

    cofaces = {}
    for idx, (dgr, faces, eps) in enumerate(entries):
        targets = []
        for i in range(n):
            if faces[i] and eps[i] == 0:
                e2 = eps[:i] + (1,) + eps[i + 1 :]
                targets.append(
                    (index[(faces, e2)], koszul(faces, eps, i) * (-1 if len(faces[i]) % 2 else 1))
                )
        for i in range(n + 1):
            if i < n and not parts[i]:
                continue
            current = set(faces[i])
            for v in parts[i]:
                if v in current:
                    continue
                if i < n and not faces[i] and eps[i] != 1:
                    continue
                nf = tuple(sorted(faces[i] + (v,)))
                f2 = faces[:i] + (nf,) + faces[i + 1 :]
                pos = nf.index(v)
                targets.append(
                    (index[(f2, eps)], koszul(faces, eps, i) * (-1 if pos % 2 else 1))
                )
        cofaces[idx] = targets

    top = max((d for d, _, _ in entries), default=-1)
    dims = [0] * (top + 2)
    for dgr, _, _ in entries:
        dims[dgr] += 1
    offsets = {}
    start = {}
    c = 0
    for k in range(top + 1):
        start[k] = c
        c += dims[k]
    diffs = []
    for k in range(top + 1):
        mat = IntMatrix(dims[k + 1] if k + 1 <= top else 0, dims[k])
        for col in range(dims[k]):
            for j, sgn in cofaces[start[k] + col]:
                mat[j - start.get(k + 1, 0), col] = sgn
        diffs.append(mat)

    def pdeg(idx, ell):
        dgr, faces, eps = entries[idx]
        s = n - ell
        if not faces[s] or eps[s] == 1:
            return NINF
        total = 0
        for i in range(s + 1, n):
            total += (len(faces[i]) - 1 + eps[i]) if faces[i] else 0
        return total + len(faces[n]) - 1

    perverse = {
        idx: {ell: pdeg(idx, ell) for ell in range(1, n + 1)} for idx in range(len(entries))
    }
    return entries, diffs, perverse


def global_complex(strat, cap=DEFAULT_CAP):
    """Perversity-independent blown-up complex, cached on the stratification
    (it is reused across perversities and coefficient primes)."""
    bc = getattr(strat, "_blowup_cache", None)
    if bc is None:
        bc = BlowupComplex(strat, cap=cap)
        if not bc.d_squared_ok():
            raise AssertionError("blown-up differential fails d^2 = 0")
        strat._blowup_cache = bc
    return bc


def blowup_cohomology(strat, p, prime, cap=DEFAULT_CAP):
    """Betti numbers of the p-allowable blown-up cochain complex over F_prime.

    Degreewise: the allowable subspace is a coordinate subspace of the global
    cell basis; intersecting with d^{-1}(allowable) is one kernel computation,
    and ranks of the restricted differential give the betti numbers."""
    bc = global_complex(strat, cap=cap)
    d = bc.differential()
    allowed = {k: [i for i in ids if bc.cell_allowed(i, p)] for k, ids in bc.by_degree.items()}
    top = bc.top_degree
    bases = {}
    for k in range(top + 1):
        cols = allowed.get(k, [])
        if not cols:
            bases[k] = IntMatrix(0, 0)
            continue
        allowed_next = set(allowed.get(k + 1, []))
        forb_rows = sorted(
            {j for i in cols for j, _ in d[i] if j not in allowed_next}
        )
        row_pos = {j: r for r, j in enumerate(forb_rows)}
        m = IntMatrix(len(forb_rows), len(cols))
        for cidx, i in enumerate(cols):
            for j, sgn in d[i]:
                if j in row_pos:
                    m[row_pos[j], cidx] = sgn % prime
        if m.nrows == 0:
            bases[k] = IntMatrix.identity(len(cols))
        else:
            ker = kernels.modp_kernel(m.rows, m.nrows, m.ncols, prime)
            width = len(ker[0]) if ker else 0
            bases[k] = IntMatrix(len(cols), width, [list(r) for r in ker])
    ranks = [0] * (top + 2)
    for k in range(top + 1):
        basis = bases[k]
        if basis.ncols == 0:
            continue
        cols = allowed.get(k, [])
        next_ids = bc.by_degree.get(k + 1, [])
        next_pos = {j: r for r, j in enumerate(next_ids)}
        dm = IntMatrix(len(next_ids), len(cols))
        for cidx, i in enumerate(cols):
            for j, sgn in d[i]:
                dm[next_pos[j], cidx] = sgn % prime
        img = dm.mul(basis).mod(prime)
        if img.nrows and img.ncols:
            ranks[k] = kernels.modp_rank(img.rows, img.nrows, img.ncols, prime)
    groups = {}
    for k in range(top + 1):
        dim_k = bases[k].ncols
        groups[k] = (dim_k - ranks[k] - (ranks[k - 1] if k else 0), ())
    summary = HomologySummary(field(prime), groups)
    summary.theory = "blowup"
    return summary
