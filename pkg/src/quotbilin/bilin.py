"""Points of the bilinear-pairing moduli: two framed modules plus a pairing.

A point is a pair of framed modules M1, M2 together with a surjection
pi : M1 (x)_S M2 ->> M3.  The pairing is stored as its lift Pihat on the full
k-linear tensor product k^(d1*d2); double equivariance with the target action
forces Pihat to factor through the tensor product over the polynomial ring.
The induced framing of M3 (columns Pihat(g_a (x) h_b)) makes the target a
framed module of rank r1*r2 and is never stored separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .exactalg import (
    LinearSystem,
    Matrix,
    ShapeError,
    UniPoly,
    express_in_echelon,
    matrix_from_json,
    matrix_to_json,
    rank_and_kernel,
    same_field,
    solve,
)
from .modcore import (
    FramedModule,
    framed_from_json,
    framed_to_json,
    make_degenerate,
    make_tuple_of_points,
    validate_framed,
)
from .quot import KernelPresentation, kernel_presentation


@dataclass(frozen=True)
class BilinPoint:
    m1: FramedModule
    m2: FramedModule
    d3: int
    Z: tuple[Matrix, ...]
    pihat: Matrix

    def __post_init__(self):
        if self.m1.n != self.m2.n:
            raise ShapeError("variable count mismatch")
        if len(self.Z) != self.m1.n:
            raise ShapeError("target action count mismatch")
        for z in self.Z:
            if (z.rows, z.cols) != (self.d3, self.d3):
                raise ShapeError("target action shape mismatch")
        if (self.pihat.rows, self.pihat.cols) != (self.d3, self.m1.d * self.m2.d):
            raise ShapeError("pairing lift shape mismatch")
        same_field(self.m1.field, self.m2.field,
                   *(z.field for z in self.Z), self.pihat.field)

    @property
    def n(self) -> int:
        return self.m1.n

    @property
    def field(self):
        return self.pihat.field

    def induced_framing(self) -> Matrix:
        """Framing of M3 indexed by generator pairs: column (a,b) at position
        a*r2 + b is Pihat(g_a (x) h_b)."""
        f = self.field
        r1, r2 = self.m1.r, self.m2.r
        cols = []
        for a in range(r1):
            ga = list(self.m1.G.col(a))
            for b in range(r2):
                hb = list(self.m2.G.col(b))
                vec = [f.zero()] * (self.m1.d * self.m2.d)
                for i, gv in enumerate(ga):
                    if f.is_zero(gv):
                        continue
                    for j, hv in enumerate(hb):
                        vec[i * self.m2.d + j] = f.mul(gv, hv)
                cols.append(self.pihat.matvec(vec))
        ents = []
        for i in range(self.d3):
            for c in cols:
                ents.append(c[i])
        return Matrix(f, self.d3, r1 * r2, ents)

    def target_module(self) -> FramedModule:
        """M3 as a framed module of rank r1*r2 with the induced framing."""
        return FramedModule(n=self.n, d=self.d3, r=self.m1.r * self.m2.r,
                            X=self.Z, G=self.induced_framing())


@dataclass
class BilinValidation:
    ok: bool
    m1_ok: bool
    m2_ok: bool
    z_commutes: bool
    equivariant: bool
    surjective: bool
    failure: Optional[str] = None
    residual: Optional[Matrix] = None

    def __bool__(self):
        return self.ok


def validate_bilin(b: BilinPoint) -> BilinValidation:
    """Check all point invariants; equivariance failures carry a residual."""
    f = b.field
    v1 = validate_framed(b.m1)
    v2 = validate_framed(b.m2)
    z_comm = True
    for i in range(b.n):
        for j in range(i + 1, b.n):
            if b.Z[i] * b.Z[j] != b.Z[j] * b.Z[i]:
                z_comm = False
    eye1 = Matrix.identity(f, b.m1.d)
    eye2 = Matrix.identity(f, b.m2.d)
    equivariant = True
    failure = None
    residual = None
    for i in range(b.n):
        resx = b.pihat * b.m1.X[i].kron(eye2) - b.Z[i] * b.pihat
        if not resx.is_zero():
            equivariant, failure, residual = False, f"X-equivariance at index {i}", resx
            break
        resy = b.pihat * eye1.kron(b.m2.X[i]) - b.Z[i] * b.pihat
        if not resy.is_zero():
            equivariant, failure, residual = False, f"Y-equivariance at index {i}", resy
            break
    surjective = b.pihat.rank() == b.d3
    ok = v1.ok and v2.ok and z_comm and equivariant and surjective
    return BilinValidation(ok=ok, m1_ok=v1.ok, m2_ok=v2.ok, z_commutes=z_comm,
                           equivariant=equivariant, surjective=surjective,
                           failure=failure, residual=residual)


# -- membership ----------------------------------------------------------------

@dataclass
class MembershipReport:
    found: bool
    point: Optional[BilinPoint]
    solution_dim: Optional[int]
    reason: Optional[str] = None


def factor_membership_detail(m1: FramedModule, m2: FramedModule,
                             m3framed: FramedModule) -> MembershipReport:
    """Solve for the pairing lift realizing a target framed module.

    Unknowns are the entries of Pihat; equations say Pihat sends each
    g_a (x) h_b to the matching framing column of the target and intertwines
    both module actions with the target action.  A solution exists iff the
    target quotient factors through M1 (x)_S M2; it is then unique because
    the generator pair tensors generate the full tensor product.
    """
    if m1.n != m2.n or m1.n != m3framed.n:
        raise ShapeError("variable count mismatch")
    if m3framed.r != m1.r * m2.r:
        raise ShapeError("target framing rank must be r1*r2")
    f = same_field(m1.field, m2.field, m3framed.field)
    d1, d2, d3 = m1.d, m2.d, m3framed.d
    dim = d1 * d2
    nvars = d3 * dim
    rows = []
    rhs = []
    # Framing equations: Pihat (g_a (x) h_b) = target column (a, b).
    for a in range(m1.r):
        ga = m1.G.col(a)
        for bcol in range(m2.r):
            hb = m2.G.col(bcol)
            w = [f.zero()] * dim
            for i in range(d1):
                if f.is_zero(ga[i]):
                    continue
                for j in range(d2):
                    w[i * d2 + j] = f.mul(ga[i], hb[j])
            target_col = m3framed.G.col(a * m2.r + bcol)
            for k in range(d3):
                row = [f.zero()] * nvars
                for c in range(dim):
                    row[k * dim + c] = w[c]
                rows.append(row)
                rhs.append(target_col[k])
    # Equivariance: Pihat (X_i (x) 1) = Z_i Pihat and the second-factor twin.
    eye1 = Matrix.identity(f, d1)
    eye2 = Matrix.identity(f, d2)
    for i in range(m1.n):
        for mat in (m1.X[i].kron(eye2), eye1.kron(m2.X[i])):
            z = m3framed.X[i]
            for k in range(d3):
                for c in range(dim):
                    row = [f.zero()] * nvars
                    # (Pihat mat)[k,c] = sum_s Pihat[k,s] mat[s,c]
                    for s in range(dim):
                        row[k * dim + s] = f.add(row[k * dim + s], mat[s, c])
                    # -(Z Pihat)[k,c] = -sum_s Z[k,s] Pihat[s,c]
                    for s in range(d3):
                        row[s * dim + c] = f.sub(row[s * dim + c], z[k, s])
                    rows.append(row)
                    rhs.append(f.zero())
    a_mat = Matrix.from_rows(f, rows)
    b_mat = Matrix.column(f, rhs)
    x = solve(a_mat, b_mat)
    if x is None:
        return MembershipReport(found=False, point=None, solution_dim=None,
                                reason="no pairing lift: target does not factor")
    _, hom_kernel = rank_and_kernel(a_mat)
    pihat = Matrix(f, d3, dim, list(x.entries))
    point = BilinPoint(m1=m1, m2=m2, d3=d3, Z=tuple(m3framed.X), pihat=pihat)
    return MembershipReport(found=True, point=point,
                            solution_dim=len(hom_kernel))


def factor_membership(m1: FramedModule, m2: FramedModule,
                      m3framed: FramedModule) -> Optional[BilinPoint]:
    return factor_membership_detail(m1, m2, m3framed).point


# -- tangent space --------------------------------------------------------------

@dataclass
class BilinTangentVector:
    xdot: tuple[Matrix, ...]
    gdot: Matrix
    ydot: tuple[Matrix, ...]
    hdot: Matrix
    zdot: tuple[Matrix, ...]
    pihatdot: Matrix


@dataclass
class BilinTangentReport:
    dim: int
    nullity: int
    gauge_dim: int
    basis: list[BilinTangentVector]


def _layout(b: BilinPoint):
    n = b.n
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    r1, r2 = b.m1.r, b.m2.r
    dim = d1 * d2
    sizes = {
        "xdot": n * d1 * d1,
        "gdot": d1 * r1,
        "ydot": n * d2 * d2,
        "hdot": d2 * r2,
        "zdot": n * d3 * d3,
        "pihatdot": d3 * dim,
    }
    offsets = {}
    pos = 0
    for name in ("xdot", "gdot", "ydot", "hdot", "zdot", "pihatdot"):
        offsets[name] = pos
        pos += sizes[name]
    return offsets, pos


def _add_equivariance_rows(sys: LinearSystem, b: BilinPoint, offsets):
    """First-order double equivariance:
    Pihatdot (A_i) + Pihat (Adot_i) = Zdot_i Pihat + Z_i Pihatdot
    once with A = X (x) 1 and once with A = 1 (x) Y."""
    f = b.field
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    dim = d1 * d2
    eye1 = Matrix.identity(f, d1)
    eye2 = Matrix.identity(f, d2)
    for i in range(b.n):
        for side in ("x", "y"):
            amat = b.m1.X[i].kron(eye2) if side == "x" else eye1.kron(b.m2.X[i])
            for k in range(d3):
                for c in range(dim):
                    row = sys.new_row()
                    # Pihatdot A: sum_s Pihatdot[k,s] A[s,c]
                    for s in range(dim):
                        v = amat[s, c]
                        if not f.is_zero(v):
                            sys.add_to_row(row, offsets["pihatdot"] + k * dim + s, v)
                    # -Z Pihatdot: -sum_s Z[k,s] Pihatdot[s,c]
                    for s in range(d3):
                        v = b.Z[i][k, s]
                        if not f.is_zero(v):
                            sys.add_to_row(row, offsets["pihatdot"] + s * dim + c, f.neg(v))
                    # Pihat (Adot): for X-side Adot = Xdot_i (x) 1:
                    #   (Pihat (Xdot (x) 1))[k, (p,q)] = sum_u Pihat[k, (u,q)] Xdot[u,p]
                    p, q = divmod(c, d2)
                    if side == "x":
                        for u in range(d1):
                            v = b.pihat[k, u * d2 + q]
                            if not f.is_zero(v):
                                sys.add_to_row(row, offsets["xdot"] + i * d1 * d1 + u * d1 + p, v)
                    else:
                        # Adot = 1 (x) Ydot_i: column (p,q) has entries Ydot[u,q] at (p,u)
                        for u in range(d2):
                            v = b.pihat[k, p * d2 + u]
                            if not f.is_zero(v):
                                sys.add_to_row(row, offsets["ydot"] + i * d2 * d2 + u * d2 + q, v)
                    # -Zdot Pihat: -sum over Zdot[k,s] Pihat[s,c]
                    for s in range(d3):
                        v = b.pihat[s, c]
                        if not f.is_zero(v):
                            sys.add_to_row(row, offsets["zdot"] + i * d3 * d3 + k * d3 + s, f.neg(v))


def _add_family_commutation(sys: LinearSystem, X: tuple[Matrix, ...], base: int, d: int):
    from .quot import _add_commutation_rows
    offsets = [base + i * d * d for i in range(len(X))]
    _add_commutation_rows(sys, X, offsets, d)


def _gauge_vectors_bilin(b: BilinPoint) -> list[tuple]:
    """Simultaneous infinitesimal basis changes (Delta1, Delta2, Delta3)."""
    f = b.field
    n = b.n
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    dim = d1 * d2
    offsets, nvars = _layout(b)
    eye1 = Matrix.identity(f, d1)
    eye2 = Matrix.identity(f, d2)
    out = []

    def unit(d, a, bb):
        m = Matrix.zeros(f, d, d)
        m.entries[a * d + bb] = f.one()
        return m

    def pack(delta1, delta2, delta3):
        vec = [f.zero()] * nvars

        def put(name, mat, block, dsize):
            base = offsets[name] + block * dsize * dsize if name in ("xdot", "ydot", "zdot") else offsets[name]
            for idx, val in enumerate(mat.entries):
                vec[base + idx] = val

        for i in range(n):
            put("xdot", delta1 * b.m1.X[i] - b.m1.X[i] * delta1, i, d1)
            put("ydot", delta2 * b.m2.X[i] - b.m2.X[i] * delta2, i, d2)
            put("zdot", delta3 * b.Z[i] - b.Z[i] * delta3, i, d3)
        put("gdot", delta1 * b.m1.G, 0, 0)
        put("hdot", delta2 * b.m2.G, 0, 0)
        pihd = delta3 * b.pihat - b.pihat * (delta1.kron(eye2) + eye1.kron(delta2))
        put("pihatdot", pihd, 0, 0)
        return tuple(vec)

    z1 = Matrix.zeros(f, d1, d1)
    z2 = Matrix.zeros(f, d2, d2)
    z3 = Matrix.zeros(f, d3, d3)
    for a in range(d1):
        for bb in range(d1):
            out.append(pack(unit(d1, a, bb), z2, z3))
    for a in range(d2):
        for bb in range(d2):
            out.append(pack(z1, unit(d2, a, bb), z3))
    for a in range(d3):
        for bb in range(d3):
            out.append(pack(z1, z2, unit(d3, a, bb)))
    return out


def bilin_tangent(b: BilinPoint, check: bool = False) -> BilinTangentReport:
    """Tangent dimension at a pairing point, on the deformation side.

    Combined system: first-order commutation for the three action families
    plus first-order double equivariance; dim = nullity - (d1^2 + d2^2 +
    d3^2), the gauge being injective at valid points.
    """
    val = validate_bilin(b)
    if not val.ok:
        raise ValueError(f"invalid pairing point: {val.failure or 'module/surjectivity'}")
    f = b.field
    offsets, nvars = _layout(b)
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    sys = LinearSystem(f, nvars)
    _add_family_commutation(sys, b.m1.X, offsets["xdot"], d1)
    _add_family_commutation(sys, b.m2.X, offsets["ydot"], d2)
    _add_family_commutation(sys, b.Z, offsets["zdot"], d3)
    _add_equivariance_rows(sys, b, offsets)
    kernel = sys.kernel_basis()
    nullity = len(kernel)
    gauge = _gauge_vectors_bilin(b)
    gauge_dim = d1 * d1 + d2 * d2 + d3 * d3
    if check:
        actual = Matrix.from_rows(f, [list(v) for v in gauge]).rank()
        if actual != gauge_dim:
            raise ArithmeticError(f"gauge rank {actual} != {gauge_dim}")
        m = sys.matrix()
        for v in gauge:
            if m.rows and not all(f.is_zero(c) for c in m.matvec(list(v))):
                raise ArithmeticError("gauge vector violates the deformation system")
    from .quot import _basis_mod_subspace
    reps = _basis_mod_subspace(kernel, gauge, f)
    basis = [_unpack_tangent(b, offsets, v) for v in reps]
    return BilinTangentReport(dim=nullity - gauge_dim, nullity=nullity,
                              gauge_dim=gauge_dim, basis=basis)


def _unpack_tangent(b: BilinPoint, offsets, v: tuple) -> BilinTangentVector:
    f = b.field
    n = b.n
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    r1, r2 = b.m1.r, b.m2.r
    dim = d1 * d2

    def grab(name, count, rows, cols):
        base = offsets[name]
        mats = []
        for i in range(count):
            size = rows * cols
            mats.append(Matrix(f, rows, cols, list(v[base + i * size: base + (i + 1) * size])))
        return mats

    return BilinTangentVector(
        xdot=tuple(grab("xdot", n, d1, d1)),
        gdot=grab("gdot", 1, d1, r1)[0],
        ydot=tuple(grab("ydot", n, d2, d2)),
        hdot=grab("hdot", 1, d2, r2)[0],
        zdot=tuple(grab("zdot", n, d3, d3)),
        pihatdot=grab("pihatdot", 1, d3, dim)[0],
    )


def tangent_residuals(b: BilinPoint, tv: BilinTangentVector) -> bool:
    """Re-check both first-order systems on a tangent vector, exactly."""
    f = b.field
    eye1 = Matrix.identity(f, b.m1.d)
    eye2 = Matrix.identity(f, b.m2.d)
    for X, Xd in ((b.m1.X, tv.xdot), (b.m2.X, tv.ydot), (b.Z, tv.zdot)):
        for i in range(b.n):
            for j in range(i + 1, b.n):
                lhs = Xd[i] * X[j] + X[i] * Xd[j]
                rhs = Xd[j] * X[i] + X[j] * Xd[i]
                if lhs != rhs:
                    return False
    for i in range(b.n):
        lhs = tv.pihatdot * b.m1.X[i].kron(eye2) + b.pihat * tv.xdot[i].kron(eye2)
        rhs = tv.zdot[i] * b.pihat + b.Z[i] * tv.pihatdot
        if lhs != rhs:
            return False
        lhs = tv.pihatdot * eye1.kron(b.m2.X[i]) + b.pihat * eye1.kron(tv.ydot[i])
        rhs = tv.zdot[i] * b.pihat + b.Z[i] * tv.pihatdot
        if lhs != rhs:
            return False
    return True


# -- homomorphism-triple oracle (univariate) -----------------------------------

def _poly_matrix_derivative(poly: UniPoly, X: Matrix, Xdot: Matrix) -> Matrix:
    """Directional derivative of p(X) in direction Xdot:
    sum_m p_m sum_{u+v=m-1} X^u Xdot X^v."""
    f = X.field
    d = X.rows
    out = Matrix.zeros(f, d, d)
    powers = [Matrix.identity(f, d)]
    for _ in range(max(poly.degree, 0)):
        powers.append(powers[-1] * X)
    for m, c in enumerate(poly.coeffs):
        if f.is_zero(c) or m == 0:
            continue
        for u in range(m):
            out = out + (powers[u] * Xdot * powers[m - 1 - u]).scale(c)
    return out


def _deformed_image(gens_cols, X: Matrix, G: Matrix, Xdot: Matrix, Gdot: Matrix) -> Matrix:
    """phi(kappa) = -(directional derivative of evaluation) applied to each
    generator column; returns d x s with column j the image of generator j."""
    f = X.field
    d = X.rows
    out_cols = []
    for col in gens_cols:
        acc = [f.zero()] * d
        for a, poly in enumerate(col):
            if poly.is_zero():
                continue
            pa = poly.eval_matrix(X)
            term = pa.matvec(list(Gdot.col(a)))
            dterm = _poly_matrix_derivative(poly, X, Xdot).matvec(list(G.col(a)))
            for i in range(d):
                acc[i] = f.add(acc[i], f.add(term[i], dterm[i]))
        out_cols.append([f.neg(v) for v in acc])
    ents = []
    for i in range(d):
        for c in out_cols:
            ents.append(c[i])
    return Matrix(f, d, len(out_cols), ents)


@dataclass
class HomTriple:
    phi1: Matrix  # d1 x s1
    phi2: Matrix  # d2 x s2
    phi3: Matrix  # d3 x s3
    pres1: KernelPresentation
    pres2: KernelPresentation
    pres3: KernelPresentation


def extract_hom_triple(b: BilinPoint, tv: BilinTangentVector) -> HomTriple:
    """Translate a deformation-side tangent vector into maps on the three
    kernel presentations (univariate only)."""
    if b.n != 1:
        raise ShapeError("hom triples are univariate only")
    f = b.field
    m3 = b.target_module()
    pres1 = kernel_presentation(b.m1)
    pres2 = kernel_presentation(b.m2)
    pres3 = kernel_presentation(m3)
    phi1 = _deformed_image(pres1.gens.columns(), b.m1.X[0], b.m1.G,
                           tv.xdot[0], tv.gdot)
    phi2 = _deformed_image(pres2.gens.columns(), b.m2.X[0], b.m2.G,
                           tv.ydot[0], tv.hdot)
    # The induced framing of M3 deforms along with (Pihat, G, H).
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    r1, r2 = b.m1.r, b.m2.r
    f3dot_cols = []
    for a in range(r1):
        ga = list(b.m1.G.col(a))
        gad = list(tv.gdot.col(a))
        for bb in range(r2):
            hb = list(b.m2.G.col(bb))
            hbd = list(tv.hdot.col(bb))
            w = [f.zero()] * (d1 * d2)
            wdot = [f.zero()] * (d1 * d2)
            for i in range(d1):
                for j in range(d2):
                    w[i * d2 + j] = f.mul(ga[i], hb[j])
                    wdot[i * d2 + j] = f.add(f.mul(gad[i], hb[j]), f.mul(ga[i], hbd[j]))
            col = [f.add(x, y) for x, y in
                   zip(tv.pihatdot.matvec(w), b.pihat.matvec(wdot))]
            f3dot_cols.append(col)
    ents = []
    for i in range(d3):
        for c in f3dot_cols:
            ents.append(c[i])
    f3dot = Matrix(f, d3, r1 * r2, ents)
    phi3 = _deformed_image(pres3.gens.columns(), b.Z[0], m3.G, tv.zdot[0], f3dot)
    return HomTriple(phi1=phi1, phi2=phi2, phi3=phi3,
                     pres1=pres1, pres2=pres2, pres3=pres3)


def hom_triple_check(b: BilinPoint, triple: HomTriple) -> bool:
    """Compatibility of a homomorphism triple with the pairing (univariate).

    On generators kappa of K1 and free basis vectors e of F2 (and the
    mirror), the image of kappa (x) e under phi3 must equal the pairing
    applied to (phi1 kappa) (x) p2(e); both sides are evaluated in M3.
    """
    if b.n != 1:
        raise ShapeError("hom triples are univariate only")
    f = b.field
    d1, d2, d3 = b.m1.d, b.m2.d, b.d3
    r1, r2 = b.m1.r, b.m2.r
    Z = b.Z[0]
    ech3 = triple.pres3.echelon
    gens3 = triple.pres3.gens.columns()

    def phi3_of(vec_polys) -> Optional[list]:
        # Quick membership test on the echelon basis, then a k[x]-linear
        # solve against the generators phi3 is defined on.
        if express_in_echelon(ech3, r1 * r2, vec_polys, f) is None:
            return None
        coeffs = _express_against(gens3, r1 * r2, vec_polys, f)
        if coeffs is None:
            return None
        acc = [f.zero()] * d3
        for j, c in enumerate(coeffs):
            add = c.eval_matrix(Z).matvec(list(triple.phi3.col(j)))
            acc = [f.add(x, y) for x, y in zip(acc, add)]
        return acc

    def pihat_pair(u, v) -> list:
        w = [f.zero()] * (d1 * d2)
        for i in range(d1):
            if f.is_zero(u[i]):
                continue
            for j in range(d2):
                w[i * d2 + j] = f.mul(u[i], v[j])
        return b.pihat.matvec(w)

    zero2 = UniPoly.zero(f)
    # K1 (x) F2 side
    for jgen in range(triple.pres1.gens.cols):
        kappa = triple.pres1.gens.col(jgen)
        img1 = list(triple.phi1.col(jgen))
        for bb in range(r2):
            vec = [zero2] * (r1 * r2)
            for a in range(r1):
                vec[a * r2 + bb] = kappa[a]
            lhs = phi3_of(vec)
            if lhs is None:
                return False
            rhs = pihat_pair(img1, list(b.m2.G.col(bb)))
            if not all(f.eq(x, y) for x, y in zip(lhs, rhs)):
                return False
    # F1 (x) K2 side
    for jgen in range(triple.pres2.gens.cols):
        kappa = triple.pres2.gens.col(jgen)
        img2 = list(triple.phi2.col(jgen))
        for a in range(r1):
            vec = [zero2] * (r1 * r2)
            for bb in range(r2):
                vec[a * r2 + bb] = kappa[bb]
            lhs = phi3_of(vec)
            if lhs is None:
                return False
            rhs = pihat_pair(list(b.m1.G.col(a)), img2)
            if not all(f.eq(x, y) for x, y in zip(lhs, rhs)):
                return False
    return True


def _express_against(gens: list, height: int, target, f) -> Optional[list[UniPoly]]:
    """Solve gens * c = target over k[x] by truncated linear algebra.

    Coefficient degrees are searched up to a bound grown a few times; for
    kernel presentations of finite-dimensional modules the solution degrees
    are tiny, so the first bound almost always suffices.
    """
    maxdeg = max((e.degree for col in gens for e in col), default=0)
    tdeg = max((e.degree for e in target), default=0)
    bound = tdeg + maxdeg + 2
    for _ in range(3):
        ncoef = bound + 1
        nvars = len(gens) * ncoef
        rows = []
        rhs = []
        outdeg = bound + maxdeg
        for i in range(height):
            for e in range(outdeg + 1):
                row = [f.zero()] * nvars
                for j, col in enumerate(gens):
                    pij = col[i]
                    for bdeg in range(ncoef):
                        a = e - bdeg
                        cval = pij.coeff(a) if 0 <= a <= pij.degree else f.zero()
                        if not f.is_zero(cval):
                            row[j * ncoef + bdeg] = cval
                tgt = target[i]
                rows.append(row)
                rhs.append(tgt.coeff(e) if e <= tgt.degree else f.zero())
        sol = solve(Matrix.from_rows(f, rows), Matrix.column(f, rhs))
        if sol is not None:
            coeffs = []
            for j in range(len(gens)):
                coeffs.append(UniPoly(f, [sol.entries[j * ncoef + k] for k in range(ncoef)]))
            return coeffs
        bound += 4
    return None


def zero_triple(b: BilinPoint) -> HomTriple:
    """The zero homomorphism triple at a point (univariate)."""
    f = b.field
    m3 = b.target_module()
    pres1 = kernel_presentation(b.m1)
    pres2 = kernel_presentation(b.m2)
    pres3 = kernel_presentation(m3)
    return HomTriple(
        phi1=Matrix.zeros(f, b.m1.d, pres1.gens.cols),
        phi2=Matrix.zeros(f, b.m2.d, pres2.gens.cols),
        phi3=Matrix.zeros(f, b.d3, pres3.gens.cols),
        pres1=pres1, pres2=pres2, pres3=pres3,
    )


# -- canonical constructors -----------------------------------------------------

def main_component_point(points, G1: Matrix, G2: Matrix) -> BilinPoint:
    """Canonical pairing point over a tuple of points.

    All three modules are the tuple-of-points module; the pairing is
    componentwise multiplication in the diagonal basis, the multiplication
    of the split algebra.
    """
    f = same_field(G1.field, G2.field)
    m1 = make_tuple_of_points(points, G1)
    m2 = make_tuple_of_points(points, G2)
    d = m1.d
    pihat = Matrix.zeros(f, d, d * d)
    for k in range(d):
        pihat.entries[k * d * d + (k * d + k)] = f.one()
    return BilinPoint(m1=m1, m2=m2, d3=d, Z=m1.X, pihat=pihat)


def degenerate_point(d: int, r1: int, r2: int, A1: Matrix, A2: Matrix,
                     Pi: Matrix, n: int = 1) -> BilinPoint:
    """Totally degenerate pairing point: zero actions everywhere, full-rank
    framings A1, A2 and a full-rank d x d^2 pairing matrix."""
    f = same_field(A1.field, A2.field, Pi.field)
    m1 = make_degenerate(d, r1, A1, n=n)
    m2 = make_degenerate(d, r2, A2, n=n)
    if (Pi.rows, Pi.cols) != (d, d * d):
        raise ShapeError("pairing matrix must be d x d^2")
    if Pi.rank() != d:
        raise ValueError("pairing matrix must have full rank d")
    Z = tuple(Matrix.zeros(f, d, d) for _ in range(n))
    return BilinPoint(m1=m1, m2=m2, d3=d, Z=Z, pihat=Pi)


# -- dimension formulas ----------------------------------------------------------

@dataclass
class DimensionReport:
    n: int
    d: int
    r1: int
    r2: int
    main_dim: int
    degenerate_dim: Optional[int]
    reducible_by_count: bool
    reducible_by_secant: bool
    irreducible: bool
    reasons: dict = dc_field(default_factory=dict)


def bilin_dims(n: int, d: int, r1: int, r2: int) -> DimensionReport:
    """Dimension and reducibility report for equal target dimensions.

    main = nd + (r1-1)d + (r2-1)d; degenerate = (r1-d)d + (r2-d)d + (d^2-d)d
    when both framing ranks reach d.  Count-based reducibility compares the
    two; the secant route applies whenever d >= 3 with framing ranks >= d;
    d <= 2 is irreducible for every n.
    """
    if n < 1 or d < 1 or r1 < 1 or r2 < 1:
        raise ValueError("need positive parameters")
    main = n * d + (r1 - 1) * d + (r2 - 1) * d
    has_degenerate = r1 >= d and r2 >= d
    degenerate = (r1 - d) * d + (r2 - d) * d + (d * d - d) * d if has_degenerate else None
    threshold = d * d - 3 * d + 2
    red_count = has_degenerate and n < threshold
    red_secant = has_degenerate and d >= 3
    irreducible = d <= 2
    reasons = {
        "count_threshold": threshold,
        "count": f"n = {n} {'<' if n < threshold else '>='} d^2-3d+2 = {threshold}"
                 + ("" if has_degenerate else " (degenerate locus absent: r_i < d)"),
        "secant": ("d >= 3 with r_i >= d: the d-th secant of the triple Segre "
                   "cannot fill the ambient space" if red_secant else
                   "no secant obstruction for d <= 2" if d <= 2 else
                   "degenerate locus absent: r_i < d"),
        "irreducible": "d <= 2: every pairing tensor has minimal border rank"
                       if irreducible else "reducible route available",
    }
    return DimensionReport(n=n, d=d, r1=r1, r2=r2, main_dim=main,
                           degenerate_dim=degenerate,
                           reducible_by_count=red_count,
                           reducible_by_secant=red_secant,
                           irreducible=irreducible, reasons=reasons)


# -- gauge -----------------------------------------------------------------------

def gauge_transform_bilin(b: BilinPoint, g1: Matrix, g2: Matrix, g3: Matrix) -> BilinPoint:
    """Simultaneous change of basis on the three underlying spaces."""
    from .modcore import gauge_transform
    m1 = gauge_transform(b.m1, g1)
    m2 = gauge_transform(b.m2, g2)
    g3inv = g3.inverse()
    Z = tuple(g3 * z * g3inv for z in b.Z)
    pihat = g3 * b.pihat * g1.inverse().kron(g2.inverse())
    return BilinPoint(m1=m1, m2=m2, d3=b.d3, Z=Z, pihat=pihat)


# -- JSON ------------------------------------------------------------------------

def bilin_to_json(b: BilinPoint) -> dict:
    return {
        "M1": framed_to_json(b.m1),
        "M2": framed_to_json(b.m2),
        "d3": b.d3,
        "Z": [matrix_to_json(z) for z in b.Z],
        "Pihat": matrix_to_json(b.pihat),
    }


def bilin_from_json(obj: dict) -> BilinPoint:
    try:
        return BilinPoint(
            m1=framed_from_json(obj["M1"]),
            m2=framed_from_json(obj["M2"]),
            d3=int(obj["d3"]),
            Z=tuple(matrix_from_json(z) for z in obj["Z"]),
            pihat=matrix_from_json(obj["Pihat"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed pairing point JSON: {exc}") from exc
