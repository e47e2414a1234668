import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from quotbilin.exactalg import (
    GF,
    QQ,
    Matrix,
    UniPoly,
    rand_invertible,
    truncated_colength,
)
from quotbilin.modcore import (
    FramedModule,
    cyclic_module_univariate,
    gauge_transform,
    make_degenerate,
    make_tuple_of_points,
    rand_framed_module,
    support_univariate,
    validate_framed,
)
from quotbilin.quot import (
    NonSplitSupport,
    degenerate_grassmannian_check,
    hom_KM_univariate,
    kernel_presentation,
    quot2_limit_family,
    quot_dims,
    quot_tangent,
)

F5 = GF(5)


def diag01(field=QQ):
    return Matrix.diag(field, [field.from_int(0), field.from_int(1)])


# -- tangent space ----------------------------------------------------------------

def test_tangent_univariate_is_dr():
    m = FramedModule(1, 2, 2, (diag01(),), Matrix.identity(QQ, 2))
    rep = quot_tangent(m, check=True)
    assert rep.dim == 4 == m.d * m.r
    assert rep.nullity - rep.gauge_dim == rep.dim


def test_tangent_zero_actions_two_variables():
    m = FramedModule(2, 2, 2, (Matrix.zeros(QQ, 2, 2), Matrix.zeros(QQ, 2, 2)),
                     Matrix.identity(QQ, 2))
    assert quot_tangent(m).dim == 8


def test_tangent_rejects_invalid():
    bad = FramedModule(1, 2, 1, (diag01(),), Matrix.from_int_rows(QQ, [[1], [0]]))
    with pytest.raises(ValueError):
        quot_tangent(bad)


def test_tangent_basis_satisfies_first_order_commutation():
    rng = random.Random(5)
    m = rand_framed_module(rng, F5, 2, 2, 2)
    rep = quot_tangent(m, check=True)
    for tv in rep.basis:
        for i in range(m.n):
            for j in range(i + 1, m.n):
                lhs = tv.xdot[i] * m.X[j] + m.X[i] * tv.xdot[j]
                rhs = tv.xdot[j] * m.X[i] + m.X[j] * tv.xdot[i]
                assert lhs == rhs


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_tangent_gauge_invariance(seed):
    rng = random.Random(seed)
    m = rand_framed_module(rng, F5, 1, rng.randint(1, 3), rng.randint(1, 3))
    g = rand_invertible(rng, F5, m.d)
    assert quot_tangent(gauge_transform(m, g)).dim == quot_tangent(m).dim


def test_tangent_dominates_principal_dim_at_tuple_points():
    rng = random.Random(9)
    for n in (1, 2):
        for d in (2, 3):
            pts = []
            seen = set()
            while len(pts) < d:
                p = tuple(F5.sample(rng) for _ in range(n))
                if p not in seen:
                    seen.add(p)
                    pts.append(p)
            r = d
            G = rand_invertible(rng, F5, d)
            m = make_tuple_of_points(pts, G)
            assert quot_tangent(m).dim >= quot_dims(n, d, r).principal_dim


# -- kernel presentation and Hom oracle ----------------------------------------------

def test_kernel_presentation_framing_example():
    # Evaluation k[x]^2 -> S/(x^2) framed by the polynomials (x^2, x): the
    # kernel has colength 1 (the image is 1-dimensional).
    X = Matrix.from_int_rows(QQ, [[0, 0], [1, 0]])
    G = Matrix.from_int_rows(QQ, [[0, 0], [0, 1]])
    m = FramedModule(1, 2, 2, (X,), G)
    pres = kernel_presentation(m)
    assert truncated_colength(pres.echelon, 2, 5, QQ) == 1
    # both stated generating sets have this same span
    one = UniPoly.from_ints(QQ, [1])
    x = UniPoly.x(QQ)
    from quotbilin.exactalg import truncated_span_dim
    stated = [[one, -x], [UniPoly.zero(QQ), x]]
    for deg in (3, 5):
        assert truncated_span_dim(pres.echelon, 2, deg, QQ) == \
            truncated_span_dim(stated, 2, deg, QQ)


def test_kernel_presentation_colength_is_d_when_generating():
    m = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, -1, 1]))  # S/(x(x-1))
    pres = kernel_presentation(m)
    assert truncated_colength(pres.echelon, m.r, m.d + 3, QQ) == m.d


def test_hom_oracle_cyclic_x2():
    m = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, 0, 1]))
    rep = hom_KM_univariate(m)
    assert rep.dim == 2 == m.d * m.r
    assert rep.dim == quot_tangent(m).dim


def test_hom_oracle_cyclic_split():
    m = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, -1, 1]))
    assert hom_KM_univariate(m).dim == 2


def test_hom_oracle_degenerate():
    m = make_degenerate(2, 2, Matrix.identity(QQ, 2))
    assert hom_KM_univariate(m).dim == 4


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_oracle_equivalence_random(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    r = rng.randint(1, 3)
    m = rand_framed_module(rng, F5, 1, d, r)
    assert quot_tangent(m).dim == hom_KM_univariate(m).dim == d * r


# -- dimension formulas -----------------------------------------------------------

@pytest.mark.parametrize("n,d,r,principal,degenerate", [
    (1, 2, 2, 4, 0),
    (2, 3, 3, 12, 0),
    (1, 2, 4, 8, 4),
])
def test_quot_dims_values(n, d, r, principal, degenerate):
    rep = quot_dims(n, d, r)
    assert rep.principal_dim == principal
    assert rep.degenerate_dim == degenerate
    assert rep.reducible_by_count is False


def test_quot_dims_degenerate_undefined_when_r_small():
    assert quot_dims(1, 3, 2).degenerate_dim is None


# -- grassmannian correspondence ---------------------------------------------------

@pytest.mark.parametrize("d,r,q,count", [
    (1, 2, 2, 3),
    (2, 3, 2, 7),
    (2, 4, 2, 35),
    (2, 3, 3, 13),
])
def test_grassmannian_counts(d, r, q, count):
    rep = degenerate_grassmannian_check(d, r, q)
    assert rep.ok
    assert rep.enumerated == count


def test_grassmannian_cap_guard():
    from quotbilin.quot import InfeasibleEnumeration
    with pytest.raises(InfeasibleEnumeration):
        degenerate_grassmannian_check(3, 6, 5, cap=1000)


# -- limit families ----------------------------------------------------------------

def _assert_family(P, expected_branch, samples=(1, 2, 3)):
    fam = quot2_limit_family(P)
    assert fam.branch == expected_branch
    f = P.field
    assert fam.evaluate(f.zero()) == P
    for t in samples:
        fiber = fam.evaluate(f.from_int(t))
        assert validate_framed(fiber).ok
        pts = _support_points(fiber)
        assert len(pts) == 2
    return fam


def _support_points(m):
    """Distinct simultaneous eigenvalue tuples of a d=2 split module."""
    vals = []
    for x in m.X:
        rep = support_univariate(FramedModule(1, m.d, m.r, (x,), m.G))
        vals.append(rep.values())
    # points are the diagonal tuples after simultaneous diagonalization; for
    # these families the per-action eigenvalues pair up in order
    pts = set()
    for k in range(m.d):
        pts.add(tuple(str(v[k]) for v in vals))
    return pts


def test_family_semisimple_branch():
    P = make_degenerate(2, 2, Matrix.identity(QQ, 2))
    fam = _assert_family(P, "semisimple")
    at1 = fam.evaluate(QQ.one())
    assert at1.X[0] == Matrix.diag(QQ, [QQ.from_int(0), QQ.from_int(1)])


def test_family_nilpotent_branch_matches_basis_form():
    P = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, 0, 1]))
    fam = _assert_family(P, "nilpotent")
    at_t = fam.evaluate(QQ.from_int(7))
    assert at_t.X[0] == Matrix.from_int_rows(QQ, [[0, 0], [1, 7]])


def test_family_distinct_branch_constant():
    P = make_tuple_of_points([QQ.from_int(0), QQ.from_int(1)], Matrix.identity(QQ, 2))
    fam = _assert_family(P, "distinct")
    assert fam.evaluate(QQ.from_int(5)) == P


def test_family_two_variables():
    E = Matrix.from_int_rows(QQ, [[0, 0], [1, 0]])
    P = FramedModule(2, 2, 1, (E, E.scale(QQ.from_int(2))),
                     Matrix.from_int_rows(QQ, [[1], [0]]))
    assert validate_framed(P).ok
    _assert_family(P, "nilpotent")


def test_family_nonsplit_rejected():
    P = cyclic_module_univariate(UniPoly.from_ints(QQ, [1, 0, 1]))
    with pytest.raises(NonSplitSupport):
        quot2_limit_family(P)


def test_family_translated_point():
    # nilpotent branch away from the origin: support at x = 3
    f = QQ
    X = Matrix.from_int_rows(f, [[3, 0], [1, 3]])
    P = FramedModule(1, 2, 1, (X,), Matrix.from_int_rows(f, [[1], [0]]))
    assert validate_framed(P).ok
    fam = quot2_limit_family(P)
    assert fam.branch == "nilpotent"
    assert fam.evaluate(f.zero()) == P
    fiber = fam.evaluate(f.one())
    rep = support_univariate(fiber)
    assert sorted(str(v) for v, _ in rep.points) == ["3", "4"]
