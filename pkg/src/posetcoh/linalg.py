"""Exact integer matrices and Smith normal form with transformation matrices.

Everything downstream (group presentations, homology, derived limits) reduces
to three primitives over the integers: the Smith normal form of a matrix with
unimodular row and column transforms, solving M x = b over the integers, and
computing a lattice basis of a kernel.  Arbitrary-precision ints are used
throughout; there is no floating point anywhere in this package.
"""

from __future__ import annotations


class IntMatrix:
    """An immutable integer matrix stored as a tuple of row tuples.

    >>> IntMatrix.from_rows([[1, 2], [3, 4]]).transpose().entries
    ((1, 3), (2, 4))
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if len(entries) != rows:
            raise ValueError("row count mismatch")
        ents = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("column count mismatch")
            ents.append(tuple(int(a) for a in row))
        self.rows = rows
        self.cols = cols
        self.entries = tuple(ents)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [list(c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("row count needed for a matrix with no columns")
            nrows = len(cols[0])
        return cls(nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, [list(r) for r in self.entries])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return IntMatrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Matrix product; `other` may also be a vector (sequence of ints)."""
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            bt = [other.column(j) for j in range(other.cols)]
            data = [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries]
            return IntMatrix(self.rows, other.cols, data)
        return self.apply(other)

    def apply(self, vector):
        """Image of an integer vector under this matrix."""
        vector = list(vector)
        if len(vector) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vector), self.cols))
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def hstack(self, other):
        """Columns of self followed by columns of other."""
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            [list(ra) + list(rb) for ra, rb in zip(self.entries, other.entries)],
        )

    def take_rows(self, indices):
        return IntMatrix(len(indices), self.cols, [self.entries[i] for i in indices])

    def is_zero(self):
        return all(a == 0 for row in self.entries for a in row)

    @classmethod
    def block_diag(cls, blocks):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    data[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(rows, cols, data)


class SmithDecomposition:
    """Factorization U * M * V = D with U, V unimodular and D in Smith form.

    The diagonal of D is nonnegative and each entry divides the next; the
    nonzero diagonal entries are the invariant factors of M.  The decomposition
    also answers solvability questions: it is the single factored object reused
    for `solve` and `kernel_basis`.
    """

    __slots__ = ("matrix", "U", "D", "V", "rank")

    def __init__(self, matrix, U, D, V):
        self.matrix = matrix
        self.U = U
        self.D = D
        self.V = V
        r = 0
        for i in range(min(D.rows, D.cols)):
            if D.entries[i][i]:
                r += 1
        self.rank = r

    def invariant_factors(self):
        return tuple(self.D.entries[i][i] for i in range(self.rank))

    def solve(self, b):
        """Some integer x with M x = b, or None when none exists."""
        M = self.matrix
        b = list(b)
        if len(b) != M.rows:
            raise ValueError("vector length %d, expected %d" % (len(b), M.rows))
        c = self.U.apply(b)
        y = [0] * M.cols
        for i in range(M.rows):
            d = self.D.entries[i][i] if i < min(M.rows, M.cols) else 0
            if d:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
            elif c[i]:
                return None
        return self.V.apply(y)

    def kernel_basis(self):
        """Columns forming a lattice basis of {x : M x = 0}."""
        M = self.matrix
        cols = []
        for j in range(M.cols):
            d = self.D.entries[j][j] if j < min(M.rows, M.cols) else 0
            if d == 0:
                cols.append(self.V.column(j))
        return IntMatrix.from_columns(cols, nrows=M.cols)


def snf(M):
    """Smith normal form of M with unimodular transforms.

    Row and column eliminations use a pivot of minimal absolute value, which
    keeps intermediate entries small in practice.  Before a pivot is accepted,
    it is made to divide every remaining entry of the working submatrix, so
    the divisibility chain on the diagonal holds by construction.

    >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]])).invariant_factors()
    (2, 4)
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        As, Ad = A[src], A[dst]
        for j in range(n):
            Ad[j] += q * As[j]
        Us, Ud = U[src], U[dst]
        for j in range(m):
            Ud[j] += q * Us[j]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def find_pivot(t):
        best = None
        where = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                a = Ai[j]
                if a:
                    a = -a if a < 0 else a
                    if best is None or a < best:
                        best = a
                        where = (i, j)
                        if a == 1:
                            return where
        return where

    t = 0
    while t < min(m, n):
        where = find_pivot(t)
        if where is None:
            break
        i0, j0 = where
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            # Euclidean elimination in column t, then row t.  A remainder
            # becomes the new, strictly smaller pivot, so this terminates.
            restart = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # pivot must divide the rest of the submatrix before we move on
            p = A[t][t]
            offender = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if A[t][t] < 0:
            for j in range(n):
                A[t][j] = -A[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    return SmithDecomposition(
        M,
        IntMatrix(m, m, U),
        IntMatrix(m, n, A),
        IntMatrix(n, n, V),
    )


def solve(M, b):
    """Some integer solution of M x = b, or None."""
    return snf(M).solve(b)


def kernel_basis(M):
    """Lattice basis of the integer kernel of M, as matrix columns."""
    return snf(M).kernel_basis()


def determinant(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = [list(r) for r in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = pivot
    return sign * A[n - 1][n - 1]


def is_unimodular(M):
    return M.rows == M.cols and determinant(M) in (1, -1)
