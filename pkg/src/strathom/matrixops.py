"""Minimal dense integer matrices (lists of rows) shared by the chain modules."""


class IntMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [[0] * ncols for _ in range(nrows)]
        else:
            assert len(rows) == nrows and all(len(r) == ncols for r in rows)
            self.rows = rows

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __setitem__(self, ij, v):
        self.rows[ij[0]][ij[1]] = v

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def copy(self):
        return IntMatrix(self.nrows, self.ncols, [row[:] for row in self.rows])

    def transpose(self):
        return IntMatrix(
            self.ncols,
            self.nrows,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
        )

    def mul(self, other):
        assert self.ncols == other.nrows
        out = IntMatrix(self.nrows, other.ncols)
        for i in range(self.nrows):
            srow = self.rows[i]
            orow = out.rows[i]
            for k in range(self.ncols):
                v = srow[k]
                if v:
                    brow = other.rows[k]
                    for j in range(other.ncols):
                        if brow[j]:
                            orow[j] += v * brow[j]
        return out

    def mod(self, p):
        return IntMatrix(self.nrows, self.ncols, [[v % p for v in row] for row in self.rows])

    def is_zero(self):
        return all(v == 0 for row in self.rows for v in row)

    def submatrix_rows(self, row_indices):
        return IntMatrix(len(row_indices), self.ncols, [self.rows[i][:] for i in row_indices])

    def submatrix_cols(self, col_indices):
        return IntMatrix(
            self.nrows,
            len(col_indices),
            [[row[j] for j in col_indices] for row in self.rows],
        )

    def to_lists(self):
        return [row[:] for row in self.rows]

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols})"
