import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from quotbilin.exactalg import (
    GF,
    QQ,
    FieldError,
    Matrix,
    ParamMatrix,
    UniPoly,
    UniPolyMatrix,
    evaluate_param,
    gaussian_binomial,
    hermite_kernel,
    matrix_from_json,
    matrix_to_json,
    parse_field,
    rank_and_kernel,
    solve,
    truncated_colength,
    truncated_kernel_dim,
    truncated_span_dim,
)

F5 = GF(5)


def mat(field, rows):
    return Matrix.from_int_rows(field, rows)


# -- fields -------------------------------------------------------------------

def test_prime_field_inverse():
    for a in range(1, 5):
        assert F5.mul(a, F5.inv(a)) == 1


def test_prime_field_rejects_composite():
    with pytest.raises(FieldError):
        GF(6)


def test_parse_field_specs():
    assert parse_field("Q") is QQ
    assert parse_field("F:7").characteristic == 7
    with pytest.raises(FieldError):
        parse_field("R")


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


# -- rank and kernel ------------------------------------------------------------

def test_rank_kernel_identity():
    rank, kernel = rank_and_kernel(Matrix.identity(QQ, 3))
    assert rank == 3 and kernel == []


def test_rank_kernel_zero_map():
    rank, kernel = rank_and_kernel(Matrix.zeros(QQ, 2, 4))
    assert rank == 0 and len(kernel) == 4


def test_rank_kernel_proportional_rows():
    rank, kernel = rank_and_kernel(mat(QQ, [[1, 2], [2, 4]]))
    assert rank == 1
    assert len(kernel) == 1
    v = kernel[0]
    # spanned by (-2, 1)
    assert v[0] * 1 == -2 * v[1]


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 10 ** 6), st.integers(2, 4), st.integers(2, 4))
def test_rank_nullity_and_membership_f5(seed, rows, cols):
    rng = random.Random(seed)
    m = Matrix(F5, rows, cols, [rng.randrange(5) for _ in range(rows * cols)])
    rank, kernel = rank_and_kernel(m)
    assert rank + len(kernel) == cols
    for v in kernel:
        assert all(x == 0 for x in m.matvec(list(v)))


def test_solve_identity_passthrough():
    b = mat(QQ, [[1, 2], [3, 4]])
    assert solve(Matrix.identity(QQ, 2), b) == b


def test_solve_zero_inconsistent():
    assert solve(Matrix.zeros(QQ, 2, 2), mat(QQ, [[1], [0]])) is None


def test_solve_scalar_division():
    x = solve(mat(QQ, [[2]]), mat(QQ, [[3]]))
    assert x == Matrix(QQ, 1, 1, [Fraction(3, 2)])


@settings(deadline=None, max_examples=50)
@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(1, 4), st.integers(1, 2))
def test_solve_exact_or_certified(seed, rows, cols, bcols):
    rng = random.Random(seed)
    a = Matrix(F5, rows, cols, [rng.randrange(5) for _ in range(rows * cols)])
    b = Matrix(F5, rows, bcols, [rng.randrange(5) for _ in range(rows * bcols)])
    x = solve(a, b)
    if x is not None:
        assert a * x == b
    else:
        aug = a.hstack(b)
        assert aug.rank() > a.rank()


# -- k[x] kernels -----------------------------------------------------------------

def test_hermite_kernel_x2_x():
    x = UniPoly.x(QQ)
    p = UniPolyMatrix(QQ, 1, 2, [x * x, x])
    k = hermite_kernel(p, certify_degree=3)
    # honest kernel of the free-module map: spanned by (1, -x)
    assert k.cols == 1
    assert (p * k).is_zero()
    expected = [[UniPoly.from_ints(QQ, [1]), UniPoly.from_ints(QQ, [0, -1])]]
    assert truncated_span_dim(k.columns(), 2, 4, QQ) == \
        truncated_span_dim(expected, 2, 4, QQ)


def test_hermite_kernel_identity_empty():
    p = UniPolyMatrix.from_scalar_matrix(Matrix.identity(QQ, 2))
    assert hermite_kernel(p).cols == 0


def test_hermite_kernel_zero_full():
    p = UniPolyMatrix.zeros(QQ, 1, 1)
    k = hermite_kernel(p)
    assert k.cols == 1
    assert k[0, 0].is_one()


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3))
def test_hermite_kernel_membership_and_stability(seed, rows, cols):
    rng = random.Random(seed)
    ents = [UniPoly(F5, [rng.randrange(5) for _ in range(rng.randint(0, 3))])
            for _ in range(rows * cols)]
    p = UniPolyMatrix(F5, rows, cols, ents)
    k = hermite_kernel(p)
    assert (p * k).is_zero()
    d1 = truncated_span_dim(k.columns(), cols, 4, F5)
    assert d1 == truncated_kernel_dim(p, 4)
    d2 = truncated_span_dim(k.columns(), cols, 6, F5)
    assert d2 == truncated_kernel_dim(p, 6)


def test_truncated_colength_framing_example():
    # Columns (1, -x), (0, x) span the kernel of the evaluation framed by
    # (x^2, x) into the 2-dimensional cyclic module; colength 1.
    one = UniPoly.from_ints(QQ, [1])
    x = UniPoly.x(QQ)
    cols = [[one, -x], [UniPoly.zero(QQ), x]]
    assert truncated_colength(cols, 2, 4, QQ) == 1
    assert truncated_colength(cols, 2, 6, QQ) == 1


# -- gaussian binomials ------------------------------------------------------------

def test_gaussian_binomial_values():
    assert gaussian_binomial(1, 2, 2) == 3
    assert gaussian_binomial(2, 2, 2) == 1
    assert gaussian_binomial(3, 3, 5) == 1
    assert gaussian_binomial(2, 4, 2) == 35


def test_gaussian_binomial_rejects_bad_args():
    with pytest.raises(ValueError):
        gaussian_binomial(3, 2, 2)
    with pytest.raises(ValueError):
        gaussian_binomial(1, 2, 6)


def _count_subspaces_bruteforce(d, r, q):
    import itertools
    field = GF(q)
    seen = set()
    for ents in itertools.product(range(q), repeat=d * r):
        m = Matrix(field, d, r, list(ents))
        rref, piv = m.rref()
        if len(piv) == d:
            seen.add(tuple(rref.entries))
    return len(seen)


@pytest.mark.parametrize("q", [2, 3])
def test_gaussian_binomial_matches_enumeration(q):
    for r in range(1, 4):
        for d in range(1, r + 1):
            assert gaussian_binomial(d, r, q) == _count_subspaces_bruteforce(d, r, q)


# -- parameter families ---------------------------------------------------------------

def test_evaluate_param_diag():
    zero = Matrix.zeros(QQ, 2, 2)
    linear = Matrix.from_int_rows(QQ, [[0, 0], [0, 1]])
    fam = ParamMatrix.affine(zero, linear)
    assert evaluate_param(fam, QQ.zero()) == zero
    at1 = evaluate_param(fam, QQ.one())
    assert at1 == Matrix.from_int_rows(QQ, [[0, 0], [0, 1]])


# -- serialization ------------------------------------------------------------------

def test_matrix_json_round_trip_q():
    m = Matrix(QQ, 2, 2, [Fraction(1, 2), Fraction(-3), Fraction(0), Fraction(7, 3)])
    obj = matrix_to_json(m)
    assert obj["field"] == "Q"
    assert obj["entries"][0] == "1/2"
    assert matrix_from_json(obj) == m


def test_matrix_json_round_trip_f5():
    m = Matrix(F5, 1, 3, [0, 3, 4])
    obj = matrix_to_json(m)
    assert obj["field"] == "F:5"
    assert matrix_from_json(obj) == m


def test_matrix_json_malformed():
    with pytest.raises(FieldError):
        matrix_from_json({"field": "Q", "rows": 1, "cols": 1})


def test_mixed_field_rejected():
    a = Matrix.identity(QQ, 2)
    b = Matrix.identity(F5, 2)
    with pytest.raises(FieldError):
        a * b
