"""Dense exact matrices and deterministic Gaussian elimination.

Entries are GaussianRational or Jet scalars; every routine works uniformly
over both.  Pivots are chosen by the first-nonzero rule on value parts, which
makes echelon forms, kernels and full-rank factorizations reproducible.
"""

from __future__ import annotations

from .errors import SingularMatrix, SizeMismatch
from .scalars import ZERO, as_scalar, is_invertible, tan_of, val_of


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        data = list(data)
        if len(data) != rows * cols:
            raise SizeMismatch(f"need {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self.data = [as_scalar(x) for x in data]

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i * n + i] = as_scalar(1)
        return m

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise SizeMismatch("ragged rows")
        return cls(r, c, [x for row in rows for x in row])

    @classmethod
    def scalar(cls, n: int, s) -> "Matrix":
        m = cls.zeros(n, n)
        sv = as_scalar(s)
        for i in range(n):
            m.data[i * n + i] = sv
        return m

    # -- access -----------------------------------------------------------
    def at(self, i: int, j: int):
        return self.data[i * self.cols + j]

    def __getitem__(self, ij):
        return self.at(*ij)

    def row_list(self, i: int):
        return self.data[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [self.row_list(i) for i in range(self.rows)]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        data = []
        for i in range(r0, r1):
            data.extend(self.data[i * self.cols + c0 : i * self.cols + c1])
        return Matrix(r1 - r0, c1 - c0, data)

    def column(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, [self.at(i, j) for i in range(self.rows)])

    def select_columns(self, js) -> "Matrix":
        js = list(js)
        data = []
        for i in range(self.rows):
            data.extend(self.at(i, j) for j in js)
        return Matrix(self.rows, len(js), data)

    # -- arithmetic ---------------------------------------------------------
    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise SizeMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise SizeMismatch(f"inner {self.cols} vs {other.rows}")
        r, k, c = self.rows, self.cols, other.cols
        out = [ZERO] * (r * c)
        a, b = self.data, other.data
        for i in range(r):
            arow = a[i * k : (i + 1) * k]
            for t in range(k):
                x = arow[t]
                if not x:
                    continue
                brow = b[t * c : (t + 1) * c]
                base = i * c
                for j in range(c):
                    y = brow[j]
                    if y:
                        out[base + j] = out[base + j] + x * y
        return Matrix(r, c, out)

    def scale(self, s) -> "Matrix":
        sv = as_scalar(s)
        return Matrix(self.rows, self.cols, [sv * a for a in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self.at(i, j) for j in range(self.cols) for i in range(self.rows)])

    def trace(self):
        if self.rows != self.cols:
            raise SizeMismatch("trace of a non-square matrix")
        t = ZERO
        for i in range(self.rows):
            t = t + self.at(i, i)
        return t

    def map(self, fn) -> "Matrix":
        return Matrix(self.rows, self.cols, [fn(a) for a in self.data])

    def val_part(self) -> "Matrix":
        return self.map(val_of)

    def tan_part(self) -> "Matrix":
        return self.map(tan_of)

    def is_zero(self) -> bool:
        return all(not a for a in self.data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and all(a == b for a, b in zip(self.data, other.data)))

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.data)))

    def __repr__(self):
        rows = "; ".join(" ".join(repr(x) for x in self.row_list(i)) for i in range(self.rows))
        return f"Matrix[{self.rows}x{self.cols}: {rows}]"


def hstack(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise SizeMismatch("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise SizeMismatch("hstack row mismatch")
    data = []
    for i in range(rows):
        for m in mats:
            data.extend(m.row_list(i))
    return Matrix(rows, sum(m.cols for m in mats), data)


def vstack(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise SizeMismatch("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise SizeMismatch("vstack column mismatch")
    data = []
    for m in mats:
        data.extend(m.data)
    return Matrix(sum(m.rows for m in mats), cols, data)


def block(grid) -> Matrix:
    return vstack([hstack(row) for row in grid])


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = Matrix.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.at(i, j)
            if not x:
                continue
            for p in range(b.rows):
                base = (i * b.rows + p) * out.cols + j * b.cols
                for q in range(b.cols):
                    out.data[base + q] = x * b.at(p, q)
    return out


def rref(m: Matrix):
    """Reduced row echelon form; returns (R, pivot column list).

    Pivot rule: scan columns left to right and take the first row whose
    entry has a nonzero value part.
    """
    r = Matrix(m.rows, m.cols, list(m.data))
    pivots = []
    lead = 0
    for col in range(r.cols):
        if lead >= r.rows:
            break
        pivot_row = None
        for i in range(lead, r.rows):
            if is_invertible(r.at(i, col)):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != lead:
            for j in range(r.cols):
                a, b = r.data[lead * r.cols + j], r.data[pivot_row * r.cols + j]
                r.data[lead * r.cols + j], r.data[pivot_row * r.cols + j] = b, a
        p = r.at(lead, col)
        for j in range(r.cols):
            r.data[lead * r.cols + j] = r.data[lead * r.cols + j] / p
        for i in range(r.rows):
            if i == lead:
                continue
            f = r.at(i, col)
            if not f:
                continue
            for j in range(r.cols):
                r.data[i * r.cols + j] = r.data[i * r.cols + j] - f * r.data[lead * r.cols + j]
        pivots.append(col)
        lead += 1
    return r, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix):
    """Deterministic basis of the null space, as a list of column vectors."""
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = as_scalar(1)
        for t, p in enumerate(pivots):
            v[p] = -r.at(t, f)
        basis.append(Matrix(m.cols, 1, v))
    return basis


def full_rank_factor(m: Matrix):
    """Factor m = P @ Q with P the pivot columns of m and Q the nonzero
    rows of its reduced echelon form; returns (rank, P, Q)."""
    r, pivots = rref(m)
    k = len(pivots)
    p = Matrix(m.rows, k, [m.at(i, j) for i in range(m.rows) for j in pivots])
    q = r.sub(0, k, 0, m.cols)
    return k, p, q


def solve(a: Matrix, b: Matrix):
    """One exact solution of a @ x = b with free variables set to zero,
    or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise SizeMismatch("solve: row mismatch")
    aug = hstack([a, b])
    r, pivots = rref(aug)
    pivots_in_a = [p for p in pivots if p < a.cols]
    if len(pivots_in_a) != len(pivots):
        return None
    # consistency: rows below the pivot rows must vanish entirely
    for i in range(len(pivots), r.rows):
        if any(r.at(i, j) for j in range(aug.cols)):
            return None
    x = Matrix.zeros(a.cols, b.cols)
    for t, p in enumerate(pivots_in_a):
        for j in range(b.cols):
            x.data[p * b.cols + j] = r.at(t, a.cols + j)
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise SizeMismatch("inverse of a non-square matrix")
    n = m.rows
    r, pivots = rref(hstack([m, Matrix.identity(n)]))
    if pivots != list(range(n)):
        raise SingularMatrix("matrix has no exact inverse")
    return r.sub(0, n, n, 2 * n)


def is_invertible_matrix(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def spans_matrix_algebra(gens, n: int) -> bool:
    """Burnside span test: does the unital algebra generated by the given
    n x n matrices fill the whole matrix algebra?  Closure is computed by
    left-multiplying an echelonized span until the dimension stabilizes."""
    if n == 0:
        raise SizeMismatch("span test on an empty space")
    nn = n * n
    basis = {}

    def insert(vec):
        vec = list(vec)
        for idx in sorted(basis):
            x = vec[idx]
            if x:
                b = basis[idx]
                vec = [vec[t] - x * b[t] for t in range(nn)]
        for idx in range(nn):
            if vec[idx]:
                p = vec[idx]
                basis[idx] = [x / p for x in vec]
                return True
        return False

    ident = Matrix.identity(n)
    insert(ident.data)
    work = [ident]
    while work and len(basis) < nn:
        m = work.pop()
        for g in gens:
            prod = g @ m
            if insert(prod.data):
                work.append(prod)
                if len(basis) == nn:
                    return True
    return len(basis) == nn


def complement_columns(basis_vectors, n: int):
    """Standard-basis columns completing the given independent columns of
    C^n to a full basis, chosen by the pivot rule."""
    cols = list(basis_vectors) + [Matrix(n, 1, [as_scalar(1 if i == j else 0) for i in range(n)])
                                  for j in range(n)]
    if not cols:
        return []
    _, pivots = rref(hstack(cols))
    k = len(basis_vectors)
    return [cols[p] for p in pivots if p >= k]
