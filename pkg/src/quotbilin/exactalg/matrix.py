"""Dense matrices over an exact field, with rank, kernel and solve.

Entries are raw field values stored row-major; the attached :class:`Field`
supplies the arithmetic.  Matrices are immutable by convention: no method
mutates ``entries`` after construction.  Everything reduces to reduced row
echelon form computed by exact Gaussian elimination.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .field import Field, FieldError, parse_field, same_field


class ShapeError(ValueError):
    """Operand shapes do not match."""


class Matrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimensions")
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ShapeError("ragged rows")
            flat.extend(row)
        return cls(field, r, c, flat)

    @classmethod
    def from_int_rows(cls, field: Field, rows: Sequence[Sequence[int]]) -> "Matrix":
        return cls.from_rows(field, [[field.from_int(x) for x in row] for row in rows])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.entries[i * n + i] = one
        return m

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Matrix":
        n = len(values)
        m = cls.zeros(field, n, n)
        for i, v in enumerate(values):
            m.entries[i * n + i] = v
        return m

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "Matrix":
        return cls(field, len(values), 1, list(values))

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return tuple(self.entries[i * self.cols: (i + 1) * self.cols])

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def key(self) -> tuple:
        """Hashable identity, usable as a dict key or for canonicalization."""
        return (self.field.name, self.rows, self.cols, tuple(self.entries))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        f = same_field(self.field, other.field)
        return all(f.eq(a, b) for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.field.name}, {self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.entries)

    # -- arithmetic ---------------------------------------------------------

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")
        same_field(self.field, other.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [f.add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [f.sub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.neg(a) for a in self.entries])

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = same_field(self.field, other.field)
        n, m, k = self.rows, self.cols, other.cols
        out = [f.zero()] * (n * k)
        se, oe = self.entries, other.entries
        for i in range(n):
            base = i * m
            for s in range(m):
                a = se[base + s]
                if f.is_zero(a):
                    continue
                ob = s * k
                rb = i * k
                for j in range(k):
                    out[rb + j] = f.add(out[rb + j], f.mul(a, oe[ob + j]))
        return Matrix(f, n, k, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [self.entries[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)])

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i,j) is self[i,j] * other."""
        f = same_field(self.field, other.field)
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        out = [f.zero()] * (r1 * r2 * c1 * c2)
        for i in range(r1):
            for j in range(c1):
                a = self.entries[i * c1 + j]
                if f.is_zero(a):
                    continue
                for p in range(r2):
                    rb = (i * r2 + p) * (c1 * c2) + j * c2
                    ob = p * c2
                    for q in range(c2):
                        out[rb + q] = f.mul(a, other.entries[ob + q])
        return Matrix(f, r1 * r2, c1 * c2, out)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ShapeError("row count mismatch in hstack")
        same_field(self.field, other.field)
        ents = []
        for i in range(self.rows):
            ents.extend(self.row(i))
            ents.extend(other.row(i))
        return Matrix(self.field, self.rows, self.cols + other.cols, ents)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ShapeError("column count mismatch in vstack")
        same_field(self.field, other.field)
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      self.entries + other.entries)

    def matvec(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ShapeError("vector length mismatch")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero()
            base = i * self.cols
            for j in range(self.cols):
                acc = f.add(acc, f.mul(self.entries[base + j], v[j]))
            out.append(acc)
        return out

    # -- elimination ---------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot columns."""
        f = self.field
        rows = self.row_lists()
        nr, nc = self.rows, self.cols
        pivots = []
        pr = 0
        for pc in range(nc):
            pivot_row = None
            for i in range(pr, nr):
                if not f.is_zero(rows[i][pc]):
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = f.inv(rows[pr][pc])
            rows[pr] = [f.mul(inv, x) for x in rows[pr]]
            for i in range(nr):
                if i == pr:
                    continue
                c = rows[i][pc]
                if f.is_zero(c):
                    continue
                rpr = rows[pr]
                rows[i] = [f.sub(rows[i][j], f.mul(c, rpr[j])) for j in range(nc)]
            pivots.append(pc)
            pr += 1
            if pr == nr:
                break
        flat = [x for row in rows for x in row]
        return Matrix(f, nr, nc, flat), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("inverse of non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(self.field, n))
        r, piv = aug.rref()
        if len(piv) < n or any(p >= n for p in piv):
            raise ZeroDivisionError("matrix is singular")
        ents = []
        for i in range(n):
            ents.extend(r.row(i)[n:])
        return Matrix(self.field, n, n, ents)


def rank_and_kernel(m: Matrix) -> tuple[int, list[tuple]]:
    """Rank and a right kernel basis of ``m``.

    Returns ``(rank, basis)`` where basis vectors are tuples of field values
    spanning ``{v : m v = 0}``; ``rank + len(basis) == m.cols`` always.
    """
    f = m.field
    r, pivots = m.rref()
    rank = len(pivots)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    basis = []
    for fc in free:
        v = [f.zero()] * m.cols
        v[fc] = f.one()
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(r[i, fc])
        basis.append(tuple(v))
    return rank, basis


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Exact solution ``x`` of ``a x = b``, or None if certifiably inconsistent.

    Inconsistency means rank([a|b]) > rank(a); free variables are set to zero.
    """
    if a.rows != b.rows:
        raise ShapeError("solve: row count mismatch")
    f = same_field(a.field, b.field)
    aug = a.hstack(b)
    r, pivots = aug.rref()
    if any(p >= a.cols for p in pivots):
        return None
    x = Matrix.zeros(f, a.cols, b.cols)
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            x.entries[pc * b.cols + j] = r[i, a.cols + j]
    return x


def span_rank(vectors: Sequence[Sequence], field: Field, dim: int) -> int:
    """Rank of the span of row vectors of length ``dim``."""
    if not vectors:
        return 0
    return Matrix.from_rows(field, [list(v) for v in vectors]).rank()


def quotient_map(span_vectors: Sequence[Sequence], field: Field, dim: int
                 ) -> tuple[Matrix, Matrix]:
    """Quotient of ``k^dim`` by the span of the given vectors.

    Returns ``(q, lift)`` with ``q`` a full-row-rank ``(dim - s) x dim`` matrix
    whose kernel is exactly the span (s = span rank), and ``lift`` a
    ``dim x (dim - s)`` section of ``q`` (``q * lift = identity``).
    """
    if span_vectors:
        m = Matrix.from_rows(field, [list(v) for v in span_vectors])
        r, pivots = m.rref()
    else:
        r, pivots = Matrix.zeros(field, 0, dim), ()
    pivset = set(pivots)
    nonpiv = [j for j in range(dim) if j not in pivset]
    qdim = len(nonpiv)
    q = Matrix.zeros(field, qdim, dim)
    for a, c in enumerate(nonpiv):
        q.entries[a * dim + c] = field.one()
        for i, pc in enumerate(pivots):
            q.entries[a * dim + pc] = field.neg(r[i, c])
    lift = Matrix.zeros(field, dim, qdim)
    for a, c in enumerate(nonpiv):
        lift.entries[c * qdim + a] = field.one()
    return q, lift


def in_span(vectors: Sequence[Sequence], v: Sequence, field: Field) -> bool:
    """Membership of ``v`` in the span of the given row vectors."""
    if not vectors:
        return all(field.is_zero(x) for x in v)
    m = Matrix.from_rows(field, [list(w) for w in vectors])
    a = m.transpose()
    return solve(a, Matrix.column(field, list(v))) is not None


class LinearSystem:
    """Accumulates homogeneous equations in ``nvars`` unknowns.

    Rows are added as (index, coefficient) updates; ``kernel_basis`` returns
    the solution space.  An empty system has full kernel.
    """

    def __init__(self, field: Field, nvars: int):
        self.field = field
        self.nvars = nvars
        self.rows: list[list] = []

    def new_row(self) -> list:
        row = [self.field.zero()] * self.nvars
        self.rows.append(row)
        return row

    def add_to_row(self, row: list, var: int, coeff):
        row[var] = self.field.add(row[var], coeff)

    def matrix(self) -> Matrix:
        flat = [x for row in self.rows for x in row]
        return Matrix(self.field, len(self.rows), self.nvars, flat)

    def kernel_basis(self) -> list[tuple]:
        if not self.rows:
            eye = Matrix.identity(self.field, self.nvars)
            return [eye.col(j) for j in range(self.nvars)]
        return rank_and_kernel(self.matrix())[1]


# -- JSON ------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> dict:
    return {
        "field": m.field.name,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [m.field.fmt(x) for x in m.entries],
    }


def matrix_from_json(obj: dict) -> Matrix:
    try:
        field = parse_field(obj["field"])
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = [field.parse(s) for s in obj["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldError(f"malformed matrix JSON: {exc}") from exc
    return Matrix(field, rows, cols, entries)
