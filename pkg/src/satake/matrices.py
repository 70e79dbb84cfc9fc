"""Exact integer matrices, Smith normal form, kernels and integer solving.

Everything is computed over Z with Python's arbitrary-precision integers;
no floating point enters anywhere.  Matrices are immutable (tuple storage)
and hashable so that group elements can be collected into sets during
closure enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class IntMatrix:
    """An immutable integer matrix.

    >>> m = IntMatrix([[1, 2], [3, 4]])
    >>> (m @ m).data
    ((7, 10), (15, 22))
    >>> m.det()
    -2
    """

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, entries, ncols=None):
        data = tuple(tuple(int(v) for v in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data[1:]):
                raise ValueError("rows of unequal length")
            if ncols is not None and int(ncols) != width:
                raise ValueError("declared column count does not match rows")
        else:
            width = 0 if ncols is None else int(ncols)
        self.data = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def diagonal(cls, entries, nrows=None, ncols=None):
        k = len(entries)
        m = k if nrows is None else nrows
        n = k if ncols is None else ncols
        rows = [[entries[i] if (i == j and i < k) else 0 for j in range(n)]
                for i in range(m)]
        return cls(rows, ncols=n)

    @classmethod
    def from_columns(cls, columns, nrows=None):
        if columns:
            nrows = len(columns[0])
        elif nrows is None:
            raise ValueError("empty column list needs an explicit row count")
        return cls([[col[i] for col in columns] for i in range(nrows)],
                   ncols=len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def entry(self, i, j):
        return self.data[i][j]

    def transpose(self):
        return IntMatrix([[self.data[i][j] for i in range(self.nrows)]
                          for j in range(self.ncols)], ncols=self.nrows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        bt = other.transpose().data
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt]
             for row in self.data],
            ncols=other.ncols)

    def apply(self, vector):
        """Matrix times column vector, as a tuple."""
        if len(vector) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.data)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)],
                         ncols=self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntMatrix([[-a for a in row] for row in self.data], ncols=self.ncols)

    def scaled(self, k):
        return IntMatrix([[k * a for a in row] for row in self.data], ncols=self.ncols)

    def power(self, k):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse_unimodular().power(-k)
        out = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_square(self):
        return self.nrows == self.ncols

    def is_zero(self):
        return all(a == 0 for row in self.data for a in row)

    def is_identity(self):
        return (self.is_square()
                and all(self.data[i][j] == (1 if i == j else 0)
                        for i in range(self.nrows) for j in range(self.ncols)))

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self):
        return self.is_square() and self.det() in (1, -1)

    def inverse_unimodular(self):
        """Inverse of a unimodular matrix, again integral."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        # exact rational Gauss-Jordan, then check integrality
        a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.data)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [v / p for v in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [v - f * w for v, w in zip(a[r], a[col])]
        inv = [row[n:] for row in a]
        if any(v.denominator != 1 for row in inv for v in row):
            raise ValueError("matrix is not unimodular over Z")
        return IntMatrix([[int(v) for v in row] for row in inv], ncols=n)

    def multiplicative_order(self, cap=10**6):
        """Least k >= 1 with self**k = 1; raises if cap is passed."""
        if not self.is_square():
            raise ValueError("order of a non-square matrix")
        acc = self
        k = 1
        ident = IntMatrix.identity(self.nrows)
        while not acc == ident:
            acc = acc @ self
            k += 1
            if k > cap:
                raise ValueError("matrix order exceeds cap; not finite order?")
        return k

    def key(self):
        """Deterministic sort key."""
        return (self.nrows, self.ncols, self.data)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.data))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]!r})"


def hstack(*mats):
    mats = [m for m in mats]
    if not mats:
        raise ValueError("nothing to stack")
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise ValueError("row counts differ")
    rows = [sum((list(m.data[i]) for m in mats), []) for i in range(nrows)]
    return IntMatrix(rows, ncols=sum(m.ncols for m in mats))


def vstack(*mats):
    mats = [m for m in mats]
    if not mats:
        raise ValueError("nothing to stack")
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise ValueError("column counts differ")
    rows = [row for m in mats for row in m.data]
    return IntMatrix(rows, ncols=ncols)


@dataclass(frozen=True)
class Lattice:
    """A free Z-module of finite rank with a distinguished basis."""

    rank: int
    label: str = ""

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")


@dataclass(frozen=True)
class LatticeMap:
    """A homomorphism of lattices in distinguished bases (matrix acts on columns)."""

    source: Lattice
    target: Lattice
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not map "
                f"rank {self.source.rank} into rank {self.target.rank}")

    def __call__(self, vector):
        return self.matrix.apply(vector)

    def compose(self, other):
        """self after other."""
        if other.target != self.source and other.target.rank != self.source.rank:
            raise ValueError("composition mismatch")
        return LatticeMap(other.source, self.target, self.matrix @ other.matrix)

    def is_automorphism(self):
        return self.source.rank == self.target.rank and self.matrix.is_unimodular()


def lattice_map(matrix, source=None, target=None):
    m = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
    src = source if source is not None else Lattice(m.ncols)
    tgt = target if target is not None else Lattice(m.nrows)
    return LatticeMap(src, tgt, m)


class SmithForm:
    """Smith normal form data: U @ M @ V == D.

    U, V are unimodular with tracked inverses, D is diagonal with
    nonnegative entries in a divisibility chain d1 | d2 | ... .
    """

    __slots__ = ("matrix", "U", "D", "V", "U_inv", "V_inv")

    def __init__(self, matrix, U, D, V, U_inv, V_inv):
        self.matrix = matrix
        self.U = U
        self.D = D
        self.V = V
        self.U_inv = U_inv
        self.V_inv = V_inv

    @property
    def diagonal(self):
        k = min(self.D.nrows, self.D.ncols)
        return tuple(self.D.data[i][i] for i in range(k))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    def triple(self):
        return (self.U, self.D, self.V)


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms and their inverses.

    Pivot selection: smallest nonzero absolute value in the trailing
    block, ties broken by (row, column) position.

    >>> sf = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    >>> sf.diagonal
    (2, 4)
    >>> sf.U @ IntMatrix([[2, 4], [6, 8]]) @ sf.V == sf.D
    True
    """
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix(matrix)
    m, n = matrix.nrows, matrix.ncols
    a = [list(row) for row in matrix.data]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    ui = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]
        for r in range(m):  # U_inv: swap columns i, k
            ui[r][i], ui[r][k] = ui[r][k], ui[r][i]

    def swap_cols(j, k):
        for r in range(m):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        for r in range(n):
            v[r][j], v[r][k] = v[r][k], v[r][j]
        vi[j], vi[k] = vi[k], vi[j]

    def row_op(i, k, q):
        # row i -= q * row k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]
        for r in range(m):  # U_inv: col k += q * col i
            ui[r][k] += q * ui[r][i]

    def col_op(j, k, q):
        # col j -= q * col k
        for r in range(m):
            a[r][j] -= q * a[r][k]
        for r in range(n):
            v[r][j] -= q * v[r][k]
        vi[k] = [x + q * y for x, y in zip(vi[k], vi[j])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in range(m):
            ui[r][i] = -ui[r][i]

    s = 0
    while s < min(m, n):
        # smallest-magnitude nonzero pivot in the trailing block
        pivot = None
        best = None
        for i in range(s, m):
            for j in range(s, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != s:
            swap_rows(s, pivot[0])
        if pivot[1] != s:
            swap_cols(s, pivot[1])
        # clear row and column s; restart whenever a remainder appears,
        # since it is strictly smaller than the current pivot
        while True:
            p = a[s][s]
            dirty = False
            for i in range(s + 1, m):
                if a[i][s] != 0:
                    q, r = divmod(a[i][s], p)
                    row_op(i, s, q)
                    if r != 0:
                        swap_rows(s, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(s + 1, n):
                if a[s][j] != 0:
                    q, r = divmod(a[s][j], p)
                    col_op(j, s, q)
                    if r != 0:
                        swap_cols(s, j)
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide the whole trailing block for the chain
            p = a[s][s]
            offender = None
            for i in range(s + 1, m):
                for j in range(s + 1, n):
                    if a[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(s, offender, -1)  # add offending row, then re-clear
        if a[s][s] < 0:
            negate_row(s)
        s += 1

    U = IntMatrix(u, ncols=m)
    Ui = IntMatrix(ui, ncols=m)
    V = IntMatrix(v, ncols=n)
    Vi = IntMatrix(vi, ncols=n)
    D = IntMatrix(a, ncols=n)
    return SmithForm(matrix, U, D, V, Ui, Vi)


def kernel_basis(matrix):
    """Columns form a basis of ker(matrix) on the source side (saturated)."""
    sf = smith_normal_form(matrix)
    diag = sf.diagonal
    free_cols = [j for j in range(matrix.ncols)
                 if j >= len(diag) or diag[j] == 0]
    cols = [sf.V.column(j) for j in free_cols]
    return IntMatrix.from_columns(cols, nrows=matrix.ncols)


def kernel(lm):
    """Kernel of a lattice map as an inclusion of a free lattice (saturated)."""
    basis = kernel_basis(lm.matrix)
    return LatticeMap(Lattice(basis.ncols, "ker"), lm.source, basis)


def solve(matrix, rhs):
    """One integer solution x of matrix @ x = rhs, or None."""
    sf = smith_normal_form(matrix)
    c = sf.U.apply(tuple(rhs))
    diag = sf.diagonal
    y = []
    for i in range(matrix.ncols):
        d = diag[i] if i < len(diag) else 0
        ci = c[i] if i < len(c) else 0
        if d == 0:
            if i < len(c) and ci != 0:
                return None
            y.append(0)
        else:
            if ci % d != 0:
                return None
            y.append(ci // d)
    for i in range(matrix.ncols, matrix.nrows):
        if c[i] != 0:
            return None
    return sf.V.apply(tuple(y))


def solve_mod(matrix, relations, rhs):
    """Solve matrix @ x = rhs modulo the column span of `relations`.

    Returns x or None.  `relations` must have the same row count.
    """
    if relations.ncols == 0:
        return solve(matrix, rhs)
    full = hstack(matrix, relations)
    sol = solve(full, rhs)
    if sol is None:
        return None
    return tuple(sol[: matrix.ncols])


def column_span_basis(matrix):
    """Basis (as columns) of the column span of `matrix` (not saturated)."""
    sf = smith_normal_form(matrix)
    diag = sf.diagonal
    cols = []
    for i, d in enumerate(diag):
        if d != 0:
            cols.append(tuple(d * x for x in sf.U_inv.column(i)))
    return IntMatrix.from_columns(cols, nrows=matrix.nrows)
