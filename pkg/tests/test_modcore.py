import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from quotbilin.exactalg import GF, QQ, Matrix, UniPoly
from quotbilin.modcore import (
    FramedModule,
    annihilator_algebra_dim,
    cyclic_module_univariate,
    cyclic_tuple_module,
    framed_from_json,
    framed_to_json,
    gauge_transform,
    make_degenerate,
    make_tuple_of_points,
    rand_framed_module,
    support_univariate,
    tensor_over_S,
    validate_framed,
)

F5 = GF(5)


def diag01(field=QQ):
    return Matrix.diag(field, [field.from_int(0), field.from_int(1)])


# -- validation -----------------------------------------------------------------

def test_validate_diagonal_module():
    m = FramedModule(1, 2, 2, (diag01(),), Matrix.identity(QQ, 2))
    assert validate_framed(m).ok


def test_validate_noncommuting_witness():
    m = FramedModule(2, 2, 2,
                     (Matrix.from_int_rows(QQ, [[0, 1], [0, 0]]),
                      Matrix.from_int_rows(QQ, [[0, 0], [1, 0]])),
                     Matrix.identity(QQ, 2))
    rep = validate_framed(m)
    assert not rep.ok and not rep.commutes
    assert rep.commutator_witness == (0, 1)


def test_validate_generation_failure_witness():
    m = FramedModule(1, 2, 1, (diag01(),), Matrix.from_int_rows(QQ, [[1], [0]]))
    rep = validate_framed(m)
    assert not rep.ok and rep.commutes and not rep.generates
    assert len(rep.invariant_subspace) == 1


# -- tensor product ---------------------------------------------------------------

def test_tensor_disjoint_support_vanishes():
    m1 = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, 1]))     # S/(x)
    m2 = cyclic_module_univariate(UniPoly.from_ints(QQ, [-1, 1]))    # S/(x-1)
    assert tensor_over_S(m1, m2).dim12 == 0


def test_tensor_degenerate_square():
    m = make_degenerate(2, 2, Matrix.identity(QQ, 2))
    assert tensor_over_S(m, m).dim12 == 4


def test_tensor_cyclic_square():
    m = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, 0, 1]))   # S/(x^2)
    assert tensor_over_S(m, m).dim12 == 2


def test_tensor_result_invariants():
    m1 = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, -1, 1]))  # S/(x(x-1))
    m2 = make_degenerate(2, 3, Matrix.from_int_rows(QQ, [[1, 0, 1], [0, 1, 0]]))
    res = tensor_over_S(m1, m2)
    assert res.q.rank() == res.dim12
    eye1 = Matrix.identity(QQ, m1.d)
    eye2 = Matrix.identity(QQ, m2.d)
    for i in range(m1.n):
        left = res.q * m1.X[i].kron(eye2)
        right = res.q * eye1.kron(m2.X[i])
        assert left == right == res.actions[i] * res.q


def test_tensor_induced_actions_commute_two_variables():
    rng = random.Random(17)
    m1 = rand_framed_module(rng, F5, 2, 2, 2)
    m2 = rand_framed_module(rng, F5, 2, 2, 1)
    res = tensor_over_S(m1, m2)
    for i in range(2):
        for j in range(i + 1, 2):
            assert res.actions[i] * res.actions[j] == res.actions[j] * res.actions[i]


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_tensor_dimension_symmetric(seed):
    rng = random.Random(seed)
    m1 = rand_framed_module(rng, F5, 1, rng.randint(1, 3), rng.randint(1, 2))
    m2 = rand_framed_module(rng, F5, 1, rng.randint(1, 3), rng.randint(1, 2))
    assert tensor_over_S(m1, m2).dim12 == tensor_over_S(m2, m1).dim12


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3))
def test_cyclic_tensor_dim_is_gcd_degree(seed, df, dg):
    rng = random.Random(seed)
    fpoly = UniPoly(F5, [rng.randrange(5) for _ in range(df)] + [1])
    gpoly = UniPoly(F5, [rng.randrange(5) for _ in range(dg)] + [1])
    mf = cyclic_module_univariate(fpoly)
    mg = cyclic_module_univariate(gpoly)
    assert tensor_over_S(mf, mg).dim12 == fpoly.gcd(gpoly).degree


# -- annihilator algebra ------------------------------------------------------------

def test_annihilator_dims():
    m = FramedModule(1, 2, 2, (diag01(),), Matrix.identity(QQ, 2))
    assert annihilator_algebra_dim(m) == 2
    nil = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, 0, 1]))
    assert annihilator_algebra_dim(nil) == 2
    z = FramedModule(2, 2, 2, (Matrix.zeros(QQ, 2, 2), Matrix.zeros(QQ, 2, 2)),
                     Matrix.identity(QQ, 2))
    assert annihilator_algebra_dim(z) == 1


def test_annihilator_of_degenerate_is_one():
    for r in (2, 3):
        a = Matrix.zeros(QQ, 2, r)
        a.entries[0] = QQ.one()
        a.entries[r + 1] = QQ.one()
        m = make_degenerate(2, r, a)
        assert annihilator_algebra_dim(m) == 1


# -- support ---------------------------------------------------------------------

def test_support_values():
    m = FramedModule(1, 2, 2, (diag01(),), Matrix.identity(QQ, 2))
    rep = support_univariate(m)
    assert rep.split and sorted(str(v) for v, _ in rep.points) == ["0", "1"]
    nil = cyclic_module_univariate(UniPoly.from_ints(QQ, [0, 0, 1]))
    rep = support_univariate(nil)
    assert rep.split and rep.points == ((QQ.zero(), 2),)


def test_support_non_split():
    m = cyclic_module_univariate(UniPoly.from_ints(QQ, [1, 0, 1]))   # x^2 + 1
    assert not support_univariate(m).split


def test_support_requires_univariate():
    z = FramedModule(2, 1, 1, (Matrix.zeros(QQ, 1, 1), Matrix.zeros(QQ, 1, 1)),
                     Matrix.identity(QQ, 1))
    with pytest.raises(Exception):
        support_univariate(z)


# -- constructors ------------------------------------------------------------------

def test_make_tuple_of_points_diag():
    m = make_tuple_of_points([QQ.from_int(0), QQ.from_int(1)], Matrix.identity(QQ, 2))
    assert m.X[0] == diag01()
    assert validate_framed(m).ok


def test_make_tuple_cyclic_all_ones():
    m = cyclic_tuple_module([QQ.from_int(0), QQ.from_int(1)], QQ)
    assert m.r == 1
    assert list(m.G.entries) == [QQ.one(), QQ.one()]
    assert validate_framed(m).ok


def test_make_tuple_of_points_plane():
    pts = [(QQ.from_int(0), QQ.from_int(0)), (QQ.from_int(1), QQ.from_int(2))]
    m = make_tuple_of_points(pts, Matrix(QQ, 2, 1, [QQ.one(), QQ.one()]))
    assert m.X[0] == Matrix.diag(QQ, [QQ.from_int(0), QQ.from_int(1)])
    assert m.X[1] == Matrix.diag(QQ, [QQ.from_int(0), QQ.from_int(2)])


def test_make_tuple_duplicate_points_rejected():
    with pytest.raises(ValueError):
        make_tuple_of_points([QQ.from_int(1), QQ.from_int(1)], Matrix.identity(QQ, 2))


def test_make_tuple_non_generating_framing_rejected():
    bad = Matrix.from_int_rows(QQ, [[1, 1], [0, 0]])  # second row zero
    with pytest.raises(ValueError):
        make_tuple_of_points([QQ.from_int(0), QQ.from_int(1)], bad)


def test_make_tuple_round_trip_support():
    pts = [QQ.from_int(c) for c in (-1, 2, 4)]
    m = make_tuple_of_points(pts, Matrix.identity(QQ, 3))
    rep = support_univariate(m)
    assert sorted(v for v, _ in rep.points) == sorted(pts)


def test_make_degenerate_rank_check():
    assert validate_framed(make_degenerate(2, 2, Matrix.identity(QQ, 2))).ok
    wide = Matrix.from_int_rows(QQ, [[1, 0, 0], [0, 1, 0]])
    assert validate_framed(make_degenerate(2, 3, wide)).ok
    with pytest.raises(ValueError):
        make_degenerate(2, 2, Matrix.from_int_rows(QQ, [[1, 1], [1, 1]]))


# -- gauge and serialization ----------------------------------------------------------

def test_gauge_transform_preserves_validity():
    rng = random.Random(11)
    m = rand_framed_module(rng, F5, 1, 2, 2)
    from quotbilin.exactalg import rand_invertible
    g = rand_invertible(rng, F5, 2)
    assert validate_framed(gauge_transform(m, g)).ok


def test_framed_json_round_trip():
    m = make_tuple_of_points([QQ.from_int(0), QQ.from_int(1)], Matrix.identity(QQ, 2))
    assert framed_from_json(framed_to_json(m)) == m
