"""Seeded random generators for matrices over exact fields."""

from __future__ import annotations

import random

from .field import Field
from .matrix import Matrix


def rand_matrix(rng: random.Random, field: Field, rows: int, cols: int) -> Matrix:
    return Matrix(field, rows, cols, [field.sample(rng) for _ in range(rows * cols)])


def rand_invertible(rng: random.Random, field: Field, n: int) -> Matrix:
    while True:
        m = rand_matrix(rng, field, n, n)
        if m.is_invertible():
            return m


def rand_vector(rng: random.Random, field: Field, n: int) -> list:
    return [field.sample(rng) for _ in range(n)]


def rand_nonzero_vector(rng: random.Random, field: Field, n: int) -> list:
    while True:
        v = rand_vector(rng, field, n)
        if not all(field.is_zero(x) for x in v):
            return v
