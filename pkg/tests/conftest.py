"""Shared test helpers: independent matrix oracles and random generators."""

import random
from fractions import Fraction

import pytest

from matreach.heisenberg import HeisTriple


def triple_to_matrix(t: HeisTriple):
    """Expand a triple to its full n x n matrix (independent oracle)."""
    n = t.dim
    m = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for j in range(n - 2):
        m[0][j + 1] = t.a[j]
        m[j + 1][n - 1] = t.b[j]
    m[0][n - 1] = t.c
    return m


def mat_mul(x, y):
    n = len(x)
    return [
        [sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def mat_sub(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def mat_scale(x, f):
    return [[f * a for a in row] for row in x]


def matrix_to_triple(m) -> HeisTriple:
    n = len(m)
    a = [m[0][j + 1] for j in range(n - 2)]
    b = [m[j + 1][n - 1] for j in range(n - 2)]
    return HeisTriple(n, a, b, m[0][n - 1])


def random_triple(rnd: random.Random, dim: int, max_den: int = 1, span: int = 2) -> HeisTriple:
    def q():
        den = rnd.randint(1, max_den)
        return Fraction(rnd.randint(-span, span), den)

    return HeisTriple(
        dim,
        [q() for _ in range(dim - 2)],
        [q() for _ in range(dim - 2)],
        q(),
    )


@pytest.fixture
def rnd():
    return random.Random(20240811)
