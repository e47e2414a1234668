"""Order-3 tensors: flattenings, conciseness, rank over small fields, the
complete 2x2x2 classification, and Terracini secant dimensions.

Classification labels are geometric, i.e. stable under extending to the
algebraic closure; rank over a specific finite field may exceed the
geometric rank and is computed separately by brute force.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactalg import (
    Field,
    GF,
    Matrix,
    QQ,
    ShapeError,
    parse_field,
    rand_nonzero_vector,
    same_field,
)
from .modcore import FramedModule


class InfeasibleEnumeration(RuntimeError):
    pass


class Tensor3:
    __slots__ = ("field", "dims", "coeffs")

    def __init__(self, field: Field, dims: tuple[int, int, int], coeffs: Sequence):
        d1, d2, d3 = dims
        coeffs = list(coeffs)
        if len(coeffs) != d1 * d2 * d3:
            raise ShapeError("coefficient count mismatch")
        self.field = field
        self.dims = (d1, d2, d3)
        self.coeffs = coeffs

    @classmethod
    def zeros(cls, field: Field, dims: tuple[int, int, int]) -> "Tensor3":
        d1, d2, d3 = dims
        return cls(field, dims, [field.zero()] * (d1 * d2 * d3))

    @classmethod
    def from_entries(cls, field: Field, dims: tuple[int, int, int],
                     entries: dict[tuple[int, int, int], object]) -> "Tensor3":
        t = cls.zeros(field, dims)
        for (i, j, k), v in entries.items():
            t.coeffs[t.index(i, j, k)] = v
        return t

    def index(self, i: int, j: int, k: int) -> int:
        d1, d2, d3 = self.dims
        return (i * d2 + j) * d3 + k

    def get(self, i: int, j: int, k: int):
        return self.coeffs[self.index(i, j, k)]

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        if self.dims != other.dims:
            return False
        f = same_field(self.field, other.field)
        return all(f.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.field.name, self.dims, tuple(self.coeffs)))

    def __add__(self, other: "Tensor3") -> "Tensor3":
        f = same_field(self.field, other.field)
        if self.dims != other.dims:
            raise ShapeError("dims mismatch")
        return Tensor3(f, self.dims, [f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        f = same_field(self.field, other.field)
        if self.dims != other.dims:
            raise ShapeError("dims mismatch")
        return Tensor3(f, self.dims, [f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "Tensor3":
        f = self.field
        return Tensor3(f, self.dims, [f.mul(c, a) for a in self.coeffs])

    def key(self) -> tuple:
        return (self.field.name, self.dims, tuple(self.coeffs))

    def flattening(self, factor: int) -> Matrix:
        """Flattening against one factor: rows are the complementary index
        pairs, columns the chosen factor, so factor-k conciseness is full
        column rank d_k."""
        d1, d2, d3 = self.dims
        f = self.field
        if factor == 1:
            ents = [self.get(i, j, k) for j in range(d2) for k in range(d3)
                    for i in range(d1)]
            return Matrix(f, d2 * d3, d1, ents)
        if factor == 2:
            ents = [self.get(i, j, k) for i in range(d1) for k in range(d3)
                    for j in range(d2)]
            return Matrix(f, d1 * d3, d2, ents)
        if factor == 3:
            ents = [self.get(i, j, k) for i in range(d1) for j in range(d2)
                    for k in range(d3)]
            return Matrix(f, d1 * d2, d3, ents)
        raise ValueError("factor must be 1, 2 or 3")

    def slice3(self, k: int) -> Matrix:
        """The d1 x d2 slice with third index fixed."""
        d1, d2, _ = self.dims
        return Matrix(self.field, d1, d2,
                      [self.get(i, j, k) for i in range(d1) for j in range(d2)])

    def apply_gl(self, g1: Matrix, g2: Matrix, g3: Matrix) -> "Tensor3":
        """Basis change on the three factors (covariant on each)."""
        d1, d2, d3 = self.dims
        f = self.field
        out = Tensor3.zeros(f, self.dims)
        for i in range(d1):
            for j in range(d2):
                for k in range(d3):
                    acc = f.zero()
                    for a in range(d1):
                        gia = g1[i, a]
                        if f.is_zero(gia):
                            continue
                        for bb in range(d2):
                            gjb = g2[j, bb]
                            if f.is_zero(gjb):
                                continue
                            for c in range(d3):
                                gkc = g3[k, c]
                                if f.is_zero(gkc):
                                    continue
                                acc = f.add(acc, f.mul(f.mul(gia, gjb),
                                                       f.mul(gkc, self.get(a, bb, c))))
                    out.coeffs[out.index(i, j, k)] = acc
        return out


def rank_one(field: Field, a: Sequence, b: Sequence, c: Sequence) -> Tensor3:
    dims = (len(a), len(b), len(c))
    t = Tensor3.zeros(field, dims)
    for i, av in enumerate(a):
        if field.is_zero(av):
            continue
        for j, bv in enumerate(b):
            if field.is_zero(bv):
                continue
            ab = field.mul(av, bv)
            for k, cv in enumerate(c):
                t.coeffs[t.index(i, j, k)] = field.mul(ab, cv)
    return t


def conciseness(t: Tensor3) -> tuple[bool, bool, bool]:
    """Per-factor conciseness: the factor-k flattening has full rank d_k."""
    return tuple(t.flattening(k).rank() == t.dims[k - 1] for k in (1, 2, 3))


def tensor_from_bilin(b) -> Tensor3:
    """Structure tensor of a pairing point: coefficient (i, j, k) is the
    k-th coordinate of the pairing applied to basis pair (i, j)."""
    from .bilin import BilinPoint, validate_bilin
    assert isinstance(b, BilinPoint)
    if not validate_bilin(b).ok:
        raise ValueError("invalid pairing point")
    f = b.field
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    t = Tensor3.zeros(f, (d1, d2, d3))
    for i in range(d1):
        for j in range(d2):
            for k in range(d3):
                t.coeffs[t.index(i, j, k)] = b.pihat[k, i * d2 + j]
    return t


# -- 2x2x2 classification -------------------------------------------------------

LABEL_ZERO = "zero"
LABEL_RANK_ONE = "rank-one"
LABEL_NON_CONCISE = "non-concise-pair"
LABEL_GENERIC = "generic"
LABEL_W_TYPE = "W-type"


@dataclass
class Classification222:
    rank: int
    border_rank: int
    concise: tuple[bool, bool, bool]
    label: str
    pencil_separable: Optional[bool] = None
    pencil_split: Optional[bool] = None
    hyperdet: Optional[object] = None


def hyperdeterminant_222(t: Tensor3):
    """Cayley hyperdeterminant of a 2x2x2 tensor (degenerates in char 2)."""
    f = t.field
    c = {(i, j, k): t.get(i, j, k) for i in range(2) for j in range(2) for k in range(2)}

    def m(*keys):
        acc = f.one()
        for key in keys:
            acc = f.mul(acc, c[key])
        return acc

    sq = f.add(
        f.add(m((0, 0, 0), (0, 0, 0), (1, 1, 1), (1, 1, 1)),
              m((0, 0, 1), (0, 0, 1), (1, 1, 0), (1, 1, 0))),
        f.add(m((0, 1, 0), (0, 1, 0), (1, 0, 1), (1, 0, 1)),
              m((0, 1, 1), (0, 1, 1), (1, 0, 0), (1, 0, 0))),
    )
    cross = f.zero()
    for pair in (
        ((0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)),
        ((0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)),
        ((0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)),
        ((0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)),
        ((0, 0, 1), (0, 1, 1), (1, 1, 0), (1, 0, 0)),
        ((0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 0, 0)),
    ):
        cross = f.add(cross, m(*pair))
    quad = f.add(m((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)),
                 m((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)))
    two = f.from_int(2)
    four = f.from_int(4)
    return f.add(f.sub(sq, f.mul(two, cross)), f.mul(four, quad))


def _pencil_form(t: Tensor3):
    """Coefficients (alpha, beta, gamma) of det(x*A + y*B) for the two
    third-factor slices A, B of a 2x2x2 tensor."""
    f = t.field
    a = t.slice3(0)
    b = t.slice3(1)
    alpha = f.sub(f.mul(a[0, 0], a[1, 1]), f.mul(a[0, 1], a[1, 0]))
    gamma = f.sub(f.mul(b[0, 0], b[1, 1]), f.mul(b[0, 1], b[1, 0]))
    beta = f.sub(
        f.add(f.mul(a[0, 0], b[1, 1]), f.mul(b[0, 0], a[1, 1])),
        f.add(f.mul(a[0, 1], b[1, 0]), f.mul(b[0, 1], a[1, 0])),
    )
    return alpha, beta, gamma


def _binary_quadratic_separable(f: Field, alpha, beta, gamma) -> tuple[bool, bool]:
    """(separable over the closure, splits over the base field) for
    alpha x^2 + beta xy + gamma y^2, assumed not identically zero.

    Characteristic-aware: discriminant in char != 2, middle coefficient in
    char 2 (where the discriminant degenerates).
    """
    if f.characteristic == 2:
        separable = not f.is_zero(beta)
    else:
        disc = f.sub(f.mul(beta, beta), f.mul(f.from_int(4), f.mul(alpha, gamma)))
        separable = not f.is_zero(disc)
    # Split over the base field: roots of the dehomogenized quadratic lie in
    # the field (projective roots counted with y = 0 allowed).
    if f.is_zero(alpha):
        split = True  # root at y = 0 plus a linear factor
    elif f.characteristic == 2:
        from .exactalg import UniPoly, roots_with_multiplicity
        poly = UniPoly(f, [gamma, beta, alpha])
        _, cof = roots_with_multiplicity(poly)
        split = cof.degree <= 0
    else:
        disc = f.sub(f.mul(beta, beta), f.mul(f.from_int(4), f.mul(alpha, gamma)))
        split = _has_sqrt(f, disc)
    return separable, split


def _has_sqrt(f: Field, v) -> bool:
    if f.characteristic == 0:
        if v < 0:
            return False
        num, den = v.numerator, v.denominator
        return _int_is_square(num) and _int_is_square(den)
    return any(f.eq(f.mul(a, a), v) for a in f.elements())


def _int_is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def classify_2x2x2(t: Tensor3, check: bool = False) -> Classification222:
    """Full geometric classification of a 2x2x2 tensor.

    Flattening ranks decide the non-concise cases; concise tensors are split
    by separability of the binary form det(x*A + y*B) on the third-factor
    slices: separable pencils are the rank-2 orbit, inseparable ones the
    rank-3 orbit of border rank 2.  Border rank never exceeds 2 because the
    second secant of the triple Segre fills the ambient space.
    """
    if t.dims != (2, 2, 2):
        raise ShapeError("classifier needs a 2x2x2 tensor")
    f = t.field
    concise = conciseness(t)
    ranks = tuple(t.flattening(k).rank() for k in (1, 2, 3))
    if t.is_zero():
        return Classification222(rank=0, border_rank=0, concise=concise, label=LABEL_ZERO)
    if all(r == 1 for r in ranks):
        return Classification222(rank=1, border_rank=1, concise=concise, label=LABEL_RANK_ONE)
    if min(ranks) == 1:
        return Classification222(rank=2, border_rank=2, concise=concise,
                                 label=LABEL_NON_CONCISE)
    alpha, beta, gamma = _pencil_form(t)
    if all(f.is_zero(v) for v in (alpha, beta, gamma)):
        raise ArithmeticError("identically singular pencil on a concise tensor")
    separable, split = _binary_quadratic_separable(f, alpha, beta, gamma)
    hyperdet = None
    if f.characteristic != 2:
        hyperdet = hyperdeterminant_222(t)
        if check:
            disc = f.sub(f.mul(beta, beta), f.mul(f.from_int(4), f.mul(alpha, gamma)))
            if f.is_zero(hyperdet) != f.is_zero(disc):
                raise ArithmeticError("hyperdeterminant disagrees with pencil discriminant")
    if separable:
        return Classification222(rank=2, border_rank=2, concise=concise,
                                 label=LABEL_GENERIC, pencil_separable=True,
                                 pencil_split=split, hyperdet=hyperdet)
    return Classification222(rank=3, border_rank=2, concise=concise,
                             label=LABEL_W_TYPE, pencil_separable=False,
                             pencil_split=split, hyperdet=hyperdet)


# -- exact rank over a small finite field ----------------------------------------

def _all_rank_one_keys(field, dims) -> list[tuple]:
    """All nonzero rank-1 tensors over a finite field, each listed once.

    First factors are normalized projectively (first nonzero coordinate 1),
    the last carries the scale.
    """
    d1, d2, d3 = dims
    p = field.characteristic

    def proj_reps(d):
        reps = []
        for vec in itertools.product(range(p), repeat=d):
            lead = next((i for i, v in enumerate(vec) if v != 0), None)
            if lead is not None and vec[lead] == 1:
                reps.append(vec)
        return reps

    def nonzero(d):
        return [v for v in itertools.product(range(p), repeat=d) if any(v)]

    keys = []
    for a in proj_reps(d1):
        for b in proj_reps(d2):
            for c in nonzero(d3):
                t = rank_one(field, list(a), list(b), list(c))
                keys.append(tuple(t.coeffs))
    return keys


def brute_force_rank_fq(t: Tensor3, q: int, rmax: int,
                        cap: int = 2_000_000) -> Optional[int]:
    """Smallest r <= rmax with a rank-r decomposition over F_q, else None.

    Breadth-first over sums of rank-1 tensors: the set of tensors of rank
    <= r is the previous layer plus one rank-1 term.  The whole coefficient
    space is materialized, so the size cap guards the product q^(d1 d2 d3).
    """
    field = GF(q)
    if t.field.characteristic != q:
        raise ValueError("tensor field does not match q")
    d1, d2, d3 = t.dims
    total = q ** (d1 * d2 * d3)
    if total > cap:
        raise InfeasibleEnumeration(f"{total} tensors exceeds cap {cap}")
    target = tuple(t.coeffs)
    zero_key = tuple([field.zero()] * (d1 * d2 * d3))
    if target == zero_key:
        return 0
    r1 = _all_rank_one_keys(field, t.dims)
    reachable = {zero_key}
    frontier = {zero_key}
    for r in range(1, rmax + 1):
        new_frontier = set()
        for base in frontier:
            for inc in r1:
                s = tuple(field.add(a, b) for a, b in zip(base, inc))
                if s not in reachable:
                    reachable.add(s)
                    new_frontier.add(s)
        if target in new_frontier:
            return r
        frontier = new_frontier
        if not frontier:
            break
    return None


# -- unit and multiplication tensors ----------------------------------------------

def unit_tensor(d: int, field: Field) -> Tensor3:
    """sum_i e_i (x) e_i (x) e_i: the split multiplication tensor."""
    t = Tensor3.zeros(field, (d, d, d))
    for i in range(d):
        t.coeffs[t.index(i, i, i)] = field.one()
    return t


def multiplication_tensor(m: FramedModule, generator: int = 0) -> Tensor3:
    """Structure constants of the action algebra in the cyclic monomial basis.

    Requires the chosen framing column to be a cyclic generator; the basis is
    built greedily from monomial images of that column, and the product of
    basis vectors u_a, u_b is the monomial product evaluated on the
    generator.
    """
    f = m.field
    d = m.d
    gen = list(m.G.col(generator))
    basis_vecs: list[tuple] = []
    basis_monos: list[tuple] = []

    def absorb(vec, mono) -> bool:
        rows = [list(v) for v in basis_vecs] + [list(vec)]
        if Matrix.from_rows(f, rows).rank() > len(basis_vecs):
            basis_vecs.append(tuple(vec))
            basis_monos.append(mono)
            return True
        return False

    absorb(gen, tuple([0] * m.n))
    frontier = [(gen, tuple([0] * m.n))]
    while frontier and len(basis_vecs) < d:
        new_frontier = []
        for vec, mono in frontier:
            for i in range(m.n):
                w = m.X[i].matvec(list(vec))
                mono2 = tuple(mono[j] + (1 if j == i else 0) for j in range(m.n))
                if absorb(w, mono2):
                    new_frontier.append((w, mono2))
        frontier = new_frontier
    if len(basis_vecs) < d:
        raise ValueError("chosen column is not a cyclic generator")
    bmat = Matrix.from_rows(f, [list(v) for v in basis_vecs]).transpose()
    binv = bmat.inverse()
    t = Tensor3.zeros(f, (d, d, d))
    for a in range(d):
        for b in range(d):
            # product monomial applied to the generator: x^(mono_a) u_b
            vec = list(basis_vecs[b])
            for i in range(m.n):
                for _ in range(basis_monos[a][i]):
                    vec = m.X[i].matvec(vec)
            coords = binv.matvec(vec)
            for k in range(d):
                t.coeffs[t.index(a, b, k)] = coords[k]
    return t


# -- Terracini secant dimension ----------------------------------------------------

@dataclass
class SecantReport:
    d: int
    r: int
    ambient: int
    bound: int
    terracini_dim: int
    fills_ambient: bool
    per_trial: list[int]


def secant_dimension(d: int, r: int, trials: int = 5, seed: int = 0,
                     field: Field = QQ) -> SecantReport:
    """Generic dimension of the r-th secant of the triple Segre of P^(d-1).

    Per trial: r random points a (x) b (x) c, tangent spaces spanned by
    replacing one factor by the full space; the projective secant dimension
    is the rank of the stacked spans minus one.  The maximum over trials is
    reported and never exceeds min(ambient, r(3(d-1)+1) - 1).
    """
    if d < 1 or r < 1:
        raise ValueError("need d, r >= 1")
    rng = random.Random(seed)
    ambient = d ** 3 - 1
    bound = min(ambient, r * (3 * (d - 1) + 1) - 1)

    def sample_point():
        # Over Q, positive integers from a window wide enough that projective
        # collisions between sampled Segre points are vanishingly rare.
        if field.characteristic == 0:
            return [field.from_int(rng.randint(1, 9973)) for _ in range(d)]
        return rand_nonzero_vector(rng, field, d)

    per_trial = []
    for _ in range(trials):
        rows = []
        for _ in range(r):
            a = sample_point()
            b = sample_point()
            c = sample_point()
            eye = Matrix.identity(field, d)
            for i in range(d):
                rows.append(rank_one(field, list(eye.col(i)), b, c).coeffs)
                rows.append(rank_one(field, a, list(eye.col(i)), c).coeffs)
                rows.append(rank_one(field, a, b, list(eye.col(i))).coeffs)
        rank = Matrix.from_rows(field, rows).rank()
        per_trial.append(rank - 1)
    terracini = max(per_trial)
    return SecantReport(d=d, r=r, ambient=ambient, bound=bound,
                        terracini_dim=terracini,
                        fills_ambient=(terracini == ambient),
                        per_trial=per_trial)


# -- JSON -------------------------------------------------------------------------

def tensor_to_json(t: Tensor3) -> dict:
    return {
        "field": t.field.name,
        "dims": list(t.dims),
        "coeffs": [t.field.fmt(c) for c in t.coeffs],
    }


def tensor_from_json(obj: dict) -> Tensor3:
    try:
        field = parse_field(obj["field"])
        dims = tuple(int(x) for x in obj["dims"])
        coeffs = [field.parse(s) for s in obj["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed tensor JSON: {exc}") from exc
    return Tensor3(field, dims, coeffs)
