"""Univariate polynomials over an exact field and k[x]-matrix kernels.

Polynomials are coefficient tuples, lowest degree first, with no trailing
zeros.  Polynomial matrices support the column-reduction kernel used to
present kernels of maps between free k[x]-modules, plus the truncated linear
algebra that certifies those kernels by degree stabilization.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .field import Field, FieldError, same_field
from .matrix import Matrix, ShapeError


class UniPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, field: Field, value) -> "UniPoly":
        return cls(field, [value])

    @classmethod
    def from_ints(cls, field: Field, ints: Sequence[int]) -> "UniPoly":
        return cls(field, [field.from_int(n) for n in ints])

    @classmethod
    def x(cls, field: Field) -> "UniPoly":
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def zero(cls, field: Field) -> "UniPoly":
        return cls(field, [])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.field.eq(self.coeffs[0], self.field.one())

    def lead(self):
        if not self.coeffs:
            raise ZeroDivisionError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        f = same_field(self.field, other.field)
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(f.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.field.name, self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        f = same_field(self.field, other.field)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(f, [f.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        f = same_field(self.field, other.field)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(f, [f.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        f = same_field(self.field, other.field)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(f)
        out = [f.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return UniPoly(f, out)

    def scale(self, c) -> "UniPoly":
        f = self.field
        return UniPoly(f, [f.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return UniPoly(self.field, [self.field.zero()] * k + list(self.coeffs))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        f = same_field(self.field, other.field)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(f), self
        quo = [f.zero()] * (dq + 1)
        inv_lead = f.inv(other.lead())
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if f.is_zero(top):
                continue
            c = f.mul(top, inv_lead)
            quo[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = f.sub(rem[k + i], f.mul(c, b))
        return UniPoly(f, quo), UniPoly(f, rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def eval(self, point):
        f = self.field
        acc = f.zero()
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, point), c)
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        """Evaluate at a square matrix argument."""
        f = same_field(self.field, m.field)
        acc = Matrix.zeros(f, m.rows, m.cols)
        for c in reversed(self.coeffs):
            acc = acc * m
            for i in range(m.rows):
                acc.entries[i * m.cols + i] = f.add(acc.entries[i * m.cols + i], c)
        return acc

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            cs = self.field.fmt(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*x" if cs != "1" else "x")
            else:
                terms.append(f"{cs}*x^{i}" if cs != "1" else f"x^{i}")
        return " + ".join(terms)


def rational_roots(p: UniPoly) -> list:
    """Roots of ``p`` lying in its coefficient field, without multiplicity.

    Over Q uses the rational root bound after clearing denominators; over a
    prime field scans all residues (guarded against huge moduli).
    """
    f = p.field
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots = []
    if f.characteristic == 0:
        denom = 1
        for c in p.coeffs:
            denom = denom * c.denominator // _gcd_int(denom, c.denominator)
        ints = [int(c * denom) for c in p.coeffs]
        while ints and ints[0] == 0:
            ints = ints[1:]
            zero = f.zero()
            if not any(f.eq(r, zero) for r in roots):
                roots.append(zero)
        if not ints:
            return roots
        from fractions import Fraction
        for num in _divisors(abs(ints[0])):
            for den in _divisors(abs(ints[-1])):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if p.eval(cand) == 0 and cand not in roots:
                        roots.append(cand)
        return roots
    if f.characteristic > 50021:
        raise FieldError("root scan unsupported for moduli above 50021")
    for a in f.elements():
        if f.is_zero(p.eval(a)):
            roots.append(a)
    return roots


def roots_with_multiplicity(p: UniPoly) -> tuple[list[tuple], UniPoly]:
    """Split off all linear factors over the base field.

    Returns ``([(root, multiplicity), ...], cofactor)`` with the cofactor
    having no roots in the field; the polynomial splits iff the cofactor is
    constant.
    """
    f = p.field
    out = []
    rem = p
    for r in rational_roots(p):
        mult = 0
        lin = UniPoly(f, [f.neg(r), f.one()])
        while True:
            q, s = rem.divmod(lin)
            if not s.is_zero():
                break
            rem = q
            mult += 1
        if mult:
            out.append((r, mult))
    return out, rem


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


class UniPolyMatrix:
    """Matrix with UniPoly entries, row-major."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence[UniPoly]):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ShapeError("entry count mismatch")
        for e in entries:
            same_field(field, e.field)
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_scalar_matrix(cls, m: Matrix) -> "UniPolyMatrix":
        return cls(m.field, m.rows, m.cols, [UniPoly.const(m.field, e) for e in m.entries])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "UniPolyMatrix":
        z = UniPoly.zero(field)
        return cls(field, rows, cols, [z] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def col(self, j: int) -> list[UniPoly]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[UniPoly]]:
        return [self.col(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, field: Field, rows: int, cols: Sequence[Sequence[UniPoly]]
                     ) -> "UniPolyMatrix":
        ents = [UniPoly.zero(field)] * (rows * len(cols))
        for j, c in enumerate(cols):
            for i in range(rows):
                ents[i * len(cols) + j] = c[i]
        return cls(field, rows, len(cols), ents)

    def apply(self, vec: Sequence[UniPoly]) -> list[UniPoly]:
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = UniPoly.zero(self.field)
            for j in range(self.cols):
                acc = acc + self.entries[i * self.cols + j] * vec[j]
            out.append(acc)
        return out

    def __mul__(self, other: "UniPolyMatrix") -> "UniPolyMatrix":
        if self.cols != other.rows:
            raise ShapeError("shape mismatch")
        f = same_field(self.field, other.field)
        ents = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = UniPoly.zero(f)
                for s in range(self.cols):
                    acc = acc + self.entries[i * self.cols + s] * other.entries[s * other.cols + j]
                ents.append(acc)
        return UniPolyMatrix(f, self.rows, other.cols, ents)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def max_degree(self) -> int:
        return max((e.degree for e in self.entries), default=-1)

    def determinant(self) -> UniPoly:
        """Cofactor expansion; intended for small matrices."""
        if self.rows != self.cols:
            raise ShapeError("determinant of non-square matrix")
        n = self.rows

        def det(rows_idx, cols_idx):
            if len(rows_idx) == 1:
                return self[rows_idx[0], cols_idx[0]]
            acc = UniPoly.zero(self.field)
            i = rows_idx[0]
            sign = 1
            for pos, j in enumerate(cols_idx):
                a = self[i, j]
                if not a.is_zero():
                    sub = det(rows_idx[1:], cols_idx[:pos] + cols_idx[pos + 1:])
                    term = a * sub
                    acc = acc + (term if sign > 0 else -term)
                sign = -sign
            return acc

        if n == 0:
            return UniPoly.const(self.field, self.field.one())
        return det(tuple(range(n)), tuple(range(n)))


def char_poly(m: Matrix) -> UniPoly:
    """Characteristic polynomial det(x*I - m)."""
    f = m.field
    n = m.rows
    x = UniPoly.x(f)
    ents = []
    for i in range(n):
        for j in range(n):
            e = UniPoly.const(f, f.neg(m[i, j]))
            if i == j:
                e = e + x
            ents.append(e)
    return UniPolyMatrix(f, n, n, ents).determinant()


# -- kernel over k[x] --------------------------------------------------------

def hermite_kernel(p: UniPolyMatrix, certify_degree: Optional[int] = None
                   ) -> UniPolyMatrix:
    """Basis of the right kernel of a k[x]-matrix, as matrix columns.

    Column reduction with Euclidean pivoting on degrees; the transformation
    columns hitting zero give a free basis of ``{v : p v = 0}``.  Output
    membership is verified by substitution.  When ``certify_degree`` is set,
    generation is certified by comparing the degree-truncated span of the
    output against the brute-force truncated kernel at that degree and two
    higher.
    """
    f = p.field
    acols = [list(c) for c in p.columns()]
    ucols = [[UniPoly.const(f, f.one()) if i == j else UniPoly.zero(f)
              for i in range(p.cols)] for j in range(p.cols)]
    frozen = 0
    for row in range(p.rows):
        while True:
            active = [j for j in range(frozen, p.cols) if not acols[j][row].is_zero()]
            if len(active) <= 1:
                break
            jstar = min(active, key=lambda j: acols[j][row].degree)
            piv = acols[jstar][row]
            for j in active:
                if j == jstar:
                    continue
                q, _ = acols[j][row].divmod(piv)
                if q.is_zero():
                    continue
                acols[j] = [acols[j][i] - q * acols[jstar][i] for i in range(p.rows)]
                ucols[j] = [ucols[j][i] - q * ucols[jstar][i] for i in range(p.cols)]
        active = [j for j in range(frozen, p.cols) if not acols[j][row].is_zero()]
        if active:
            j = active[0]
            acols[frozen], acols[j] = acols[j], acols[frozen]
            ucols[frozen], ucols[j] = ucols[j], ucols[frozen]
            frozen += 1
    kernel_cols = []
    for j in range(frozen, p.cols):
        assert all(e.is_zero() for e in acols[j])
        kernel_cols.append(ucols[j])
    out = UniPolyMatrix.from_columns(f, p.cols, kernel_cols)
    for col in kernel_cols:
        residual = p.apply(col)
        if not all(e.is_zero() for e in residual):
            raise ArithmeticError("kernel column fails substitution check")
    if certify_degree is not None:
        for d in (certify_degree, certify_degree + 2):
            want = truncated_kernel_dim(p, d)
            got = truncated_span_dim(kernel_cols, p.cols, d, f)
            if want != got:
                raise ArithmeticError(
                    f"kernel generation certificate failed at degree {d}: {got} < {want}")
    return out


def truncated_kernel_dim(p: UniPolyMatrix, max_degree: int) -> int:
    """Dimension of {v in k[x]^c : p v = 0, deg v_j <= max_degree} over k."""
    f = p.field
    c = p.cols
    nvars = c * (max_degree + 1)
    out_deg = max_degree + max(p.max_degree(), 0)
    rows = []
    for i in range(p.rows):
        for e in range(out_deg + 1):
            row = [f.zero()] * nvars
            nonzero = False
            for j in range(c):
                pij = p[i, j]
                for b in range(max_degree + 1):
                    a = e - b
                    coeff = pij.coeff(a) if 0 <= a <= pij.degree else f.zero()
                    if not f.is_zero(coeff):
                        row[j * (max_degree + 1) + b] = coeff
                        nonzero = True
            if nonzero:
                rows.append(row)
    if not rows:
        return nvars
    m = Matrix.from_rows(f, rows)
    return m.cols - m.rank()


def weak_popov(cols: Sequence[Sequence[UniPoly]], height: int, field: Field
               ) -> list[list[UniPoly]]:
    """Degree-reduce columns to weak Popov form (distinct leading positions).

    The leading position of a column is the bottom-most row achieving its
    maximal entry degree; while two columns collide there, the higher-degree
    one is reduced by a monomial multiple of the other.  The span over k[x]
    is unchanged, zero columns are dropped, and the result satisfies the
    predictable degree property: no k[x]-combination drops below the maximal
    shifted degree, so degree-truncated spans of the output are exact.
    """
    work = [list(c) for c in cols if any(not e.is_zero() for e in c)]

    def col_degree(col):
        return max(e.degree for e in col)

    def leading_position(col):
        d = col_degree(col)
        return max(i for i, e in enumerate(col) if e.degree == d)

    while True:
        by_lp: dict[int, int] = {}
        clash = None
        for j, col in enumerate(work):
            lp = leading_position(col)
            if lp in by_lp:
                clash = (by_lp[lp], j, lp)
                break
            by_lp[lp] = j
        if clash is None:
            return work
        j1, j2, lp = clash
        if col_degree(work[j1]) < col_degree(work[j2]):
            j1, j2 = j2, j1
        hi, lo = work[j1], work[j2]
        shift = col_degree(hi) - col_degree(lo)
        c = field.div(hi[lp].lead(), lo[lp].lead())
        mono = UniPoly(field, [field.zero()] * shift + [c])
        work[j1] = [hi[i] - mono * lo[i] for i in range(height)]
        if all(e.is_zero() for e in work[j1]):
            del work[j1]


def truncated_span_dim(cols: Sequence[Sequence[UniPoly]], height: int,
                       max_degree: int, field: Field) -> int:
    """k-dimension of the degree-truncated k[x]-span of the given columns.

    The columns are first reduced to weak Popov form so that shifted
    generators x^e * col staying within ``max_degree`` span the truncation
    exactly; entries are laid out as coefficient vectors.
    """
    rows = []
    width = height * (max_degree + 1)
    for col in weak_popov(cols, height, field):
        top = max((e.degree for e in col), default=-1)
        if top < 0:
            continue
        for shift in range(max_degree - top + 1):
            row = [field.zero()] * width
            for i, e in enumerate(col):
                for a, cf in enumerate(e.coeffs):
                    row[i * (max_degree + 1) + a + shift] = cf
            rows.append(row)
    if not rows:
        return 0
    return Matrix.from_rows(field, rows).rank()


def truncated_colength(cols: Sequence[Sequence[UniPoly]], height: int,
                       max_degree: int, field: Field) -> int:
    """Codimension of the truncated span inside truncated k[x]^height.

    For a submodule of finite colength this stabilizes to the true colength
    once ``max_degree`` is large enough.
    """
    total = height * (max_degree + 1)
    return total - truncated_span_dim(cols, height, max_degree, field)


def column_echelon(cols: Sequence[Sequence[UniPoly]], height: int, field: Field
                   ) -> list[list[UniPoly]]:
    """Reduce columns so first nonzero rows are distinct and increasing.

    Pure column operations: the span over k[x] is unchanged.  Zero columns
    are dropped.
    """
    work = [list(c) for c in cols]
    out = []
    frozen = 0
    work = [c for c in work if any(not e.is_zero() for e in c)]
    for row in range(height):
        while True:
            active = [j for j in range(frozen, len(work)) if not work[j][row].is_zero()]
            if len(active) <= 1:
                break
            jstar = min(active, key=lambda j: work[j][row].degree)
            piv = work[jstar][row]
            for j in active:
                if j == jstar:
                    continue
                q, _ = work[j][row].divmod(piv)
                if q.is_zero():
                    continue
                work[j] = [work[j][i] - q * work[jstar][i] for i in range(height)]
        work = [c for c in work if any(not e.is_zero() for e in c)]
        active = [j for j in range(frozen, len(work)) if not work[j][row].is_zero()]
        if active:
            j = active[0]
            work[frozen], work[j] = work[j], work[frozen]
            frozen += 1
    return work


def express_in_echelon(echelon_cols: Sequence[Sequence[UniPoly]], height: int,
                       target: Sequence[UniPoly], field: Field
                       ) -> Optional[list[UniPoly]]:
    """Coefficients writing ``target`` as a k[x]-combination of echelon columns.

    Requires columns in the :func:`column_echelon` form.  Returns None when
    the target is not in the span (detected by a failed exact division or a
    nonzero residual).
    """
    pivots = []
    for col in echelon_cols:
        for i in range(height):
            if not col[i].is_zero():
                pivots.append(i)
                break
    rem = list(target)
    coeffs = []
    for col, pr in zip(echelon_cols, pivots):
        q, r = rem[pr].divmod(col[pr])
        if not r.is_zero():
            return None
        coeffs.append(q)
        if not q.is_zero():
            rem = [rem[i] - q * col[i] for i in range(height)]
    if any(not e.is_zero() for e in rem):
        return None
    return coeffs
