"""Dense exact matrices over the rationals.

All elimination goes through a fraction-free (Bareiss-style) integer
forward pass: rows are cleared to integers, pivots are chosen by the
lexicographic convention (leftmost column, then lowest row index), and
entries stay minors of the input so intermediate growth is polynomial.
Every operation is a pure function of its input, so equal inputs give
bit-identical outputs.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InputError, StructureError

Vec = tuple  # tuple of Fraction


def vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, j: int) -> Vec:
    return tuple(Fraction(1 if i == j else 0) for i in range(n))


def add_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale_vec(c, v: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero_vec(v: Vec) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable dense matrix with Fraction entries, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        data = tuple(tuple(Fraction(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise InputError(f"matrix data does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def from_rows(data) -> "Matrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if data else 0
        return Matrix(rows, cols, data)

    @staticmethod
    def from_cols(cols_data, rows: int | None = None) -> "Matrix":
        cols_data = [list(c) for c in cols_data]
        if cols_data:
            rows = len(cols_data[0])
        elif rows is None:
            raise InputError("from_cols with no columns needs an explicit row count")
        return Matrix(rows, len(cols_data),
                      [[cols_data[j][i] for j in range(len(cols_data))] for i in range(rows)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return Matrix(rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[Fraction(1 if i == j else 0) for j in range(n)]
                             for i in range(n)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def row(self, i: int) -> Vec:
        return self.data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in matrix addition")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix(self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.cols
        out = []
        for r in self.data:
            row = [Fraction(0)] * ocols
            for k, a in enumerate(r):
                if a:
                    orow = other.data[k]
                    for j in range(ocols):
                        if orow[j]:
                            row[j] += a * orow[j]
            out.append(row)
        return Matrix(self.rows, ocols, out)

    def apply(self, v: Vec) -> Vec:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise InputError("vector length does not match matrix columns")
        out = []
        for r in self.data:
            s = Fraction(0)
            for a, x in zip(r, v):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise InputError("row mismatch in hstack")
        return Matrix(self.rows, self.cols + other.cols,
                      [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    # -- elimination ------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column list)."""
        R, piv = _rref_rows([list(r) for r in self.data], self.cols)
        return Matrix(len(R), self.cols, R), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list:
        """Basis of the right kernel under the pivot convention.

        One vector per free column, taken in increasing column order; the
        free coordinate is 1 and pivot coordinates are back-filled.
        """
        R, piv = self.rref()
        pivset = set(piv)
        basis = []
        for f in range(self.cols):
            if f in pivset:
                continue
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for k, p in enumerate(piv):
                v[p] = -R.data[k][f]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise InputError("only square matrices invert")
        ps = PreparedSolve(self)
        cols = []
        for j in range(self.rows):
            x = ps.solve(unit_vec(self.rows, j))
            if x is None:
                raise InputError("matrix is singular")
            cols.append(x)
        inv = Matrix.from_cols(cols, rows=self.rows)
        if (self @ inv).data != Matrix.identity(self.rows).data:
            raise InputError("matrix is singular")
        return inv

    def solve(self, b: Vec):
        """Some x with self @ x = b, free variables 0; None if unsolvable."""
        if len(b) != self.rows:
            raise InputError("right-hand side length does not match matrix rows")
        aug = [list(r) + [Fraction(b[i])] for i, r in enumerate(self.data)]
        R, piv = _rref_rows(aug, self.cols + 1, stop_col=self.cols)
        if self.cols in piv:
            return None
        x = [Fraction(0)] * self.cols
        for k, p in enumerate(piv):
            x[p] = R[k][self.cols]
        # rows below the pivots must have vanished entirely
        for k in range(len(piv), len(R)):
            if R[k][self.cols] != 0:
                return None
        return tuple(x)


def _int_rows(rows):
    """Clear each row to coprime integers (row scaling by a positive rational)."""
    out = []
    for r in rows:
        l = 1
        for x in r:
            if x:
                d = x.denominator
                l = l * d // gcd(l, d)
        ir = [int(x * l) for x in r]
        g = 0
        for x in ir:
            g = gcd(g, abs(x))
        if g > 1:
            ir = [x // g for x in ir]
        out.append(ir)
    return out


def _rref_rows(rows, cols, stop_col=None):
    """RREF over Fractions via an integer fraction-free forward pass.

    `stop_col` limits pivot search (used for augmented systems); entries to
    the right still take part in the row operations. Returns the reduced
    rows (Fractions) in pivot order followed by zero rows, and the pivot
    column list.
    """
    if stop_col is None:
        stop_col = cols
    work = _int_rows([[Fraction(x) for x in r] for r in rows])
    n = len(work)
    piv_cols = []
    piv_rows = []
    top = 0
    prev = 1
    for c in range(stop_col):
        sel = -1
        for i in range(top, n):
            if work[i][c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != top:
            work[top], work[sel] = work[sel], work[top]
        p = work[top][c]
        wt = work[top]
        for i in range(top + 1, n):
            wi = work[i]
            f = wi[c]
            for j in range(cols):
                q, rem = divmod(p * wi[j] - f * wt[j], prev)
                if rem:
                    raise StructureError("fraction-free elimination lost exactness")
                wi[j] = q
        piv_cols.append(c)
        piv_rows.append(top)
        prev = p
        top += 1
        if top == n:
            break
    # back substitution over Fractions on the echelon rows
    red = [[Fraction(x) for x in r] for r in work]
    for k in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[k]
        p = red[k][c]
        red[k] = [x / p for x in red[k]]
        for i in range(k):
            f = red[i][c]
            if f:
                red[i] = [a - f * b for a, b in zip(red[i], red[k])]
    return [tuple(r) for r in red], piv_cols


def quotient_basis(sub_vectors, ambient_dim: int) -> list:
    """Standard basis vectors spanning ambient / span(sub_vectors).

    The returned vectors are the non-pivot coordinate vectors of the
    subspace's reduced row form, in increasing index order.
    """
    for v in sub_vectors:
        if len(v) != ambient_dim:
            raise InputError("subspace vector has wrong length")
    if not sub_vectors:
        return [unit_vec(ambient_dim, j) for j in range(ambient_dim)]
    _, piv = Matrix.from_rows(sub_vectors).rref()
    pivset = set(piv)
    return [unit_vec(ambient_dim, j) for j in range(ambient_dim) if j not in pivset]


class RowReducer:
    """Incremental span tracker over Fractions.

    Keeps a reduced set of rows; `add` returns True when the vector
    enlarged the span. Deterministic given insertion order.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots = {}  # pivot column -> reduced row

    def reduce(self, v: Vec) -> Vec:
        v = list(v)
        for c in sorted(self.pivots):
            if v[c]:
                row = self.pivots[c]
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def add(self, v: Vec) -> bool:
        r = self.reduce(v)
        for c, x in enumerate(r):
            if x:
                self.pivots[c] = tuple(a / x for a in r)
                return True
        return False

    def contains(self, v: Vec) -> bool:
        return is_zero_vec(self.reduce(v))

    @property
    def rank(self) -> int:
        return len(self.pivots)


class PreparedSolve:
    """Repeated exact solves against a fixed matrix.

    Factors [M | I] once; solve(b) then costs one row-transform plus
    back-substitution. Matches Matrix.solve exactly.
    """

    def __init__(self, m: Matrix):
        self.m = m
        aug = [list(r) + [Fraction(1 if j == i else 0) for j in range(m.rows)]
               for i, r in enumerate(m.data)]
        R, piv = _rref_rows(aug, m.cols + m.rows, stop_col=m.cols)
        self.piv = piv
        self.red = [r[:m.cols] for r in R]
        self.ops = [r[m.cols:] for r in R]

    def solve(self, b: Vec):
        if len(b) != self.m.rows:
            raise InputError("right-hand side length does not match matrix rows")
        m = self.m
        tb = [sum((op[i] * b[i] for i in range(m.rows) if b[i]), Fraction(0))
              for op in self.ops]
        x = [Fraction(0)] * m.cols
        for k, p in enumerate(self.piv):
            x[p] = tb[k]
        for k in range(len(self.piv), len(tb)):
            if tb[k] != 0:
                return None
        return tuple(x)
