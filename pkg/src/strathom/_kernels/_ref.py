"""Reference implementations of the exact linear-algebra kernels.

Pure Python over arbitrary-precision integers.  The compiled backend in
``_fast.pyx`` runs the same algorithms on int64 and bails out (OverflowError)
when entries leave the safe range, so both backends produce identical output.

Matrix convention: list of rows, each row a list of ints.  Shapes are passed
explicitly so empty matrices keep their dimensions.
"""


def _pivot_smallest(a, nrows, ncols, t):
    """Position of the nonzero entry of smallest |value| in a[t:, t:], row-major ties."""
    best = None
    bi = bj = -1
    for i in range(t, nrows):
        row = a[i]
        for j in range(t, ncols):
            v = row[j]
            if v != 0:
                av = -v if v < 0 else v
                if best is None or av < best:
                    best, bi, bj = av, i, j
                    if best == 1:
                        return bi, bj
    return (bi, bj) if best is not None else None


def snf(a, nrows, ncols, transforms=False):
    """Smith normal form.

    Returns (diag, rank, U, V) where diag are the invariant factors
    (non-negative, each dividing the next) and U @ A @ V has diag on the
    diagonal.  U and V are None unless transforms is requested.
    """
    a = [row[:] for row in a]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)] if transforms else None
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)] if transforms else None
    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        pos = _pivot_smallest(a, nrows, ncols, t)
        if pos is None:
            break
        pi, pj = pos
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            if transforms:
                u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            if transforms:
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(nrows):
                if i != t and a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q != 0:
                        ai, at = a[i], a[t]
                        for k in range(t, ncols):
                            ai[k] -= q * at[k]
                        if transforms:
                            ui, ut = u[i], u[t]
                            for k in range(nrows):
                                ui[k] -= q * ut[k]
                    if a[i][t] != 0:
                        # remainder beats the pivot; promote it
                        a[t], a[i] = a[i], a[t]
                        if transforms:
                            u[t], u[i] = u[i], u[t]
                        dirty = True
                        break
            if dirty:
                continue
            # clear row t
            for j in range(ncols):
                if j != t and a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q != 0:
                        for i in range(t, nrows):
                            a[i][j] -= q * a[i][t]
                        if transforms:
                            for row in v:
                                row[j] -= q * row[t]
                    if a[t][j] != 0:
                        for i in range(nrows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        if transforms:
                            for row in v:
                                row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            # enforce divisibility of the trailing block by the pivot
            p = a[t][t]
            found = False
            for i in range(t + 1, nrows):
                row = a[i]
                for j in range(t + 1, ncols):
                    if row[j] % p != 0:
                        at = a[t]
                        for k in range(t, ncols):
                            at[k] += row[k]
                        if transforms:
                            ut, ui = u[t], u[i]
                            for k in range(nrows):
                                ut[k] += ui[k]
                        found = True
                        break
                if found:
                    break
            if not found:
                break
        if a[t][t] < 0:
            for k in range(t, ncols):
                a[t][k] = -a[t][k]
            if transforms:
                for k in range(nrows):
                    u[t][k] = -u[t][k]
        t += 1
    diag = [a[i][i] for i in range(limit)]
    rank = sum(1 for d in diag if d != 0)
    return diag, rank, u, v


def kernel_basis(a, nrows, ncols):
    """Basis of the integer kernel of A, as an (ncols x r) matrix in column
    Hermite form (pivots positive, entries left of a pivot reduced mod it)."""
    e = [row[:] for row in a]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    r = 0
    for row_i in range(nrows):
        if r >= ncols:
            break
        while True:
            best = None
            bj = -1
            for j in range(r, ncols):
                val = e[row_i][j]
                if val != 0:
                    av = -val if val < 0 else val
                    if best is None or av < best:
                        best, bj = av, j
            if best is None:
                break
            if bj != r:
                for rr in e:
                    rr[r], rr[bj] = rr[bj], rr[r]
                for rr in v:
                    rr[r], rr[bj] = rr[bj], rr[r]
            clean = True
            for j in range(r + 1, ncols):
                if e[row_i][j] != 0:
                    q = e[row_i][j] // e[row_i][r]
                    if q != 0:
                        for rr in e:
                            rr[j] -= q * rr[r]
                        for rr in v:
                            rr[j] -= q * rr[r]
                    if e[row_i][j] != 0:
                        clean = False
            if clean:
                if e[row_i][r] < 0:
                    for rr in e:
                        rr[r] = -rr[r]
                    for rr in v:
                        rr[r] = -rr[r]
                r += 1
                break
    ker = [[v[i][j] for j in range(r, ncols)] for i in range(ncols)]
    return hermite_columns(ker, ncols, ncols - r)


def hermite_columns(b, nrows, ncols):
    """Column Hermite form of a full-column-rank matrix (kernel bases are)."""
    b = [row[:] for row in b]
    c = 0
    for row_i in range(nrows):
        if c >= ncols:
            break
        while True:
            best = None
            bj = -1
            for j in range(c, ncols):
                val = b[row_i][j]
                if val != 0:
                    av = -val if val < 0 else val
                    if best is None or av < best:
                        best, bj = av, j
            if best is None:
                break
            if bj != c:
                for rr in b:
                    rr[c], rr[bj] = rr[bj], rr[c]
            clean = True
            for j in range(c + 1, ncols):
                if b[row_i][j] != 0:
                    q = b[row_i][j] // b[row_i][c]
                    if q != 0:
                        for rr in b:
                            rr[j] -= q * rr[c]
                    if b[row_i][j] != 0:
                        clean = False
            if clean:
                if b[row_i][c] < 0:
                    for rr in b:
                        rr[c] = -rr[c]
                for j in range(c):
                    q = b[row_i][j] // b[row_i][c]
                    if q != 0:
                        for rr in b:
                            rr[j] -= q * rr[c]
                c += 1
                break
    return b


def solve_columns(b, nrows, ncols, y, ycols):
    """Solve B X = Y exactly for B in column Hermite form (unique solution
    assumed to exist).  Raises ArithmeticError when Y is not in the span."""
    pivots = []
    for j in range(ncols):
        pr = -1
        for i in range(nrows):
            if b[i][j] != 0:
                pr = i
                break
        if pr < 0:
            raise ArithmeticError("zero column in basis")
        pivots.append(pr)
    x = [[0] * ycols for _ in range(ncols)]
    resid = [row[:] for row in y]
    for j in range(ncols):
        pr = pivots[j]
        pv = b[pr][j]
        for cc in range(ycols):
            val = resid[pr][cc]
            if val % pv != 0:
                raise ArithmeticError("inexact division in basis solve")
            q = val // pv
            x[j][cc] = q
            if q != 0:
                for i in range(pr, nrows):
                    resid[i][cc] -= q * b[i][j]
    for i in range(nrows):
        for cc in range(ycols):
            if resid[i][cc] != 0:
                raise ArithmeticError("vector not in basis span")
    return x


def modp_rref(a, nrows, ncols, p):
    """Row-reduced echelon form mod p.  Returns (rank, pivot columns, R)."""
    r = [[val % p for val in row] for row in a]
    pivots = []
    lead = 0
    for j in range(ncols):
        if lead >= nrows:
            break
        pr = -1
        for i in range(lead, nrows):
            if r[i][j] != 0:
                pr = i
                break
        if pr < 0:
            continue
        r[lead], r[pr] = r[pr], r[lead]
        inv = pow(r[lead][j], p - 2, p)
        row = r[lead]
        for k in range(j, ncols):
            row[k] = (row[k] * inv) % p
        for i in range(nrows):
            if i != lead and r[i][j] != 0:
                f = r[i][j]
                ri = r[i]
                for k in range(j, ncols):
                    ri[k] = (ri[k] - f * row[k]) % p
        pivots.append(j)
        lead += 1
    return len(pivots), pivots, r


def modp_rank(a, nrows, ncols, p):
    return modp_rref(a, nrows, ncols, p)[0]


def modp_kernel(a, nrows, ncols, p):
    """Basis of the kernel mod p as an (ncols x k) matrix, canonical RREF form."""
    rank, pivots, r = modp_rref(a, nrows, ncols, p)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    ker = [[0] * len(free) for _ in range(ncols)]
    for idx, fj in enumerate(free):
        ker[fj][idx] = 1
        for i, pj in enumerate(pivots):
            v = r[i][fj]
            if v:
                ker[pj][idx] = (-v) % p
    return ker
