"""Triple arithmetic against the full-matrix expansion oracle."""

from fractions import Fraction

import pytest

from matreach.heisenberg import (
    DimensionMismatchError,
    HeisTriple,
    LieTriple,
    bch_log_product,
    bracket_corner,
    heis_exp,
    heis_identity,
    heis_inv,
    heis_log,
    heis_mul,
    heis_product,
    lie_bracket,
)

from conftest import mat_mul, matrix_to_triple, random_triple, triple_to_matrix


def H3(a, b, c):
    return HeisTriple(3, [a], [b], c)


def test_mul_examples():
    assert heis_mul(H3(1, 0, 0), H3(0, 1, 0)) == H3(1, 1, 1)
    assert heis_mul(H3(0, 1, 0), H3(1, 0, 0)) == H3(1, 1, 0)
    # derived by expanding to 3x3 matrices and multiplying
    x, y = H3(1, 1, 1), H3(1, 1, 0)
    expected = matrix_to_triple(mat_mul(triple_to_matrix(x), triple_to_matrix(y)))
    assert expected == H3(2, 2, 2)
    assert heis_mul(x, y) == expected


def test_mul_matches_matrix_product_on_random_samples(rnd):
    for dim in (3, 4, 5):
        for _ in range(50):
            x = random_triple(rnd, dim, max_den=3)
            y = random_triple(rnd, dim, max_den=3)
            direct = matrix_to_triple(mat_mul(triple_to_matrix(x), triple_to_matrix(y)))
            assert heis_mul(x, y) == direct


def test_mul_associative(rnd):
    for _ in range(100):
        x, y, z = (random_triple(rnd, 4, max_den=2) for _ in range(3))
        assert heis_mul(heis_mul(x, y), z) == heis_mul(x, heis_mul(y, z))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        heis_mul(H3(1, 0, 0), HeisTriple(4, [1, 0], [0, 1], 0))


def test_inverse():
    assert heis_inv(H3(1, 1, 1)) == H3(-1, -1, 0)
    assert heis_inv(H3(0, 0, 5)) == H3(0, 0, -5)
    assert heis_inv(heis_identity(3)) == heis_identity(3)


def test_inverse_random(rnd):
    for _ in range(50):
        x = random_triple(rnd, 5, max_den=3)
        assert heis_mul(x, heis_inv(x)) == heis_identity(5)
        assert heis_mul(heis_inv(x), x) == heis_identity(5)


def test_log_exp_examples():
    assert heis_log(H3(1, 1, 1)) == LieTriple(3, [1], [1], Fraction(1, 2))
    assert heis_log(H3(0, 0, 5)) == LieTriple(3, [0], [0], 5)
    assert heis_log(heis_identity(3)) == LieTriple(3, [0], [0], 0)
    assert heis_exp(LieTriple(3, [1], [1], Fraction(1, 2))) == H3(1, 1, 1)
    assert heis_exp(LieTriple(3, [0], [0], 0)) == heis_identity(3)
    assert heis_exp(LieTriple(3, [2], [2], 0)) == H3(2, 2, 2)


def test_log_exp_inverse_bijection(rnd):
    for dim in (3, 4, 5):
        for _ in range(40):
            x = random_triple(rnd, dim, max_den=4)
            assert heis_exp(heis_log(x)) == x
            l = heis_log(random_triple(rnd, dim, max_den=4))
            assert heis_log(heis_exp(l)) == l


def test_log_matches_matrix_series(rnd):
    # log(A) = (A - I) - (A - I)^2 / 2, computed on full matrices
    from conftest import mat_scale, mat_sub

    for _ in range(25):
        x = random_triple(rnd, 4, max_den=2)
        m = triple_to_matrix(x)
        n = len(m)
        ident = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        d = mat_sub(m, ident)
        series = mat_sub(d, mat_scale(mat_mul(d, d), Fraction(1, 2)))
        l = heis_log(x)
        assert series[0][n - 1] == l.c
        assert [series[0][j + 1] for j in range(n - 2)] == list(l.a)


def test_bracket():
    l1 = heis_log(H3(1, 0, 0))
    l2 = heis_log(H3(0, 1, 0))
    assert lie_bracket(l1, l2) == LieTriple(3, [0], [0], 1)
    assert lie_bracket(l1, l1) == LieTriple(3, [0], [0], 0)


def test_bracket_bilinear_antisymmetric_nilpotent(rnd):
    for _ in range(40):
        a = heis_log(random_triple(rnd, 4, max_den=3))
        b = heis_log(random_triple(rnd, 4, max_den=3))
        c = heis_log(random_triple(rnd, 4, max_den=3))
        assert bracket_corner(a, b) == -bracket_corner(b, a)
        assert lie_bracket(a + b, c) == lie_bracket(a, c) + lie_bracket(b, c)
        scaled = a.scale(Fraction(3, 2))
        assert bracket_corner(scaled, b) == Fraction(3, 2) * bracket_corner(a, b)
        # any nested bracket vanishes
        assert lie_bracket(lie_bracket(a, b), c) == LieTriple(4, [0, 0], [0, 0], 0)


def test_bch_examples():
    assert bch_log_product([H3(1, 0, 0), H3(0, 1, 0)]) == LieTriple(3, [1], [1], Fraction(1, 2))
    seq = [H3(1, 0, 0), H3(0, 1, 0), H3(1, 1, 0)]
    assert heis_product(seq) == H3(2, 2, 2)
    assert bch_log_product(seq) == LieTriple(3, [2], [2], 0)
    x = H3(2, -1, 3)
    assert bch_log_product([x]) == heis_log(x)


def test_bch_equals_log_of_product(rnd):
    for dim in (3, 4, 5):
        for _ in range(60):
            seq = [random_triple(rnd, dim, max_den=4) for _ in range(rnd.randint(1, 8))]
            assert bch_log_product(seq) == heis_log(heis_product(seq))


def test_bch_empty_rejected():
    with pytest.raises(ValueError):
        bch_log_product([])
