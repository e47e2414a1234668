"""Exact linear algebra kernels: fields, matrices, k[x]-matrices, families."""

from .field import Field, FieldError, GF, PrimeField, QQ, RationalField, parse_field, same_field
from .matrix import (
    LinearSystem,
    Matrix,
    ShapeError,
    in_span,
    matrix_from_json,
    matrix_to_json,
    quotient_map,
    rank_and_kernel,
    solve,
    span_rank,
)
from .unipoly import (
    UniPoly,
    UniPolyMatrix,
    char_poly,
    column_echelon,
    express_in_echelon,
    hermite_kernel,
    rational_roots,
    roots_with_multiplicity,
    truncated_colength,
    truncated_kernel_dim,
    truncated_span_dim,
    weak_popov,
)
from .param import ParamMatrix, ParamTensor, evaluate_param
from .count import gaussian_binomial, is_prime_power
from .sampling import rand_invertible, rand_matrix, rand_nonzero_vector, rand_vector

__all__ = [
    "Field", "FieldError", "GF", "PrimeField", "QQ", "RationalField",
    "parse_field", "same_field",
    "LinearSystem", "Matrix", "ShapeError", "in_span", "matrix_from_json",
    "matrix_to_json", "quotient_map", "rank_and_kernel", "solve", "span_rank",
    "UniPoly", "UniPolyMatrix", "char_poly", "column_echelon",
    "express_in_echelon", "hermite_kernel", "rational_roots",
    "roots_with_multiplicity", "truncated_colength", "truncated_kernel_dim",
    "truncated_span_dim", "weak_popov",
    "ParamMatrix", "ParamTensor", "evaluate_param",
    "gaussian_binomial", "is_prime_power",
    "rand_invertible", "rand_matrix", "rand_nonzero_vector", "rand_vector",
]
