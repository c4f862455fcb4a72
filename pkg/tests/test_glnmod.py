"""Exact module/matrix layer: sparse ops against a dense rational oracle,
symmetric-power bases, commutant dimensions."""

import random
from fractions import Fraction
from math import comb

import pytest

from glnwebs.glnmod import (
    Matrix,
    TensorSpace,
    commutant_dim,
    matrix_rank,
    s2_pivotal_check,
    sym_basis,
)
from glnwebs.functor import space_of
from glnwebs.qalg import LaurentFraction, LaurentPoly


def up_space(n, ks):
    return space_of(tuple((k, "u") for k in ks), n)


@pytest.mark.parametrize("n", (2, 3, 4))
@pytest.mark.parametrize("k", (0, 1, 2, 3))
def test_sym_basis_dimension(n, k):
    assert len(sym_basis(n, k)) == comb(n + k - 1, k)


def rand_matrix(rng, dom, cod, density=0.4):
    m = Matrix.zero(dom, cod)
    for r in range(cod.dim):
        for c in range(dom.dim):
            if rng.random() < density:
                p = LaurentPoly(dom.n, {rng.randint(-3, 3): rng.randint(-4, 4)})
                m.set(r, c, LaurentFraction.from_poly(p))
    return m


def dense_at(mat, u0):
    return mat.specialize(Fraction(u0))


def mat_prod(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(a[r][k] * b[k][c] for k in range(inner)) for c in range(cols)]
        for r in range(rows)
    ]


def test_matmul_matches_dense_oracle():
    rng = random.Random(11)
    n = 2
    s1, s2, s3 = up_space(n, (1,)), up_space(n, (1, 1)), up_space(n, (2,))
    u0 = Fraction(5, 3)
    for _ in range(20):
        a = rand_matrix(rng, s2, s3)
        b = rand_matrix(rng, s1, s2)
        assert dense_at(a @ b, u0) == mat_prod(dense_at(a, u0), dense_at(b, u0))


def test_matmul_fractional_entries():
    rng = random.Random(5)
    n = 2
    s = up_space(n, (1, 1))
    u0 = Fraction(7, 2)
    half = LaurentFraction(LaurentPoly.one(n), LaurentPoly(n, {2: 1, -2: 1}))
    for _ in range(10):
        a = rand_matrix(rng, s, s).scale(half)
        b = rand_matrix(rng, s, s)
        assert dense_at(a @ b, u0) == mat_prod(dense_at(a, u0), dense_at(b, u0))
        assert dense_at(b @ a, u0) == mat_prod(dense_at(b, u0), dense_at(a, u0))


def test_add_scale_oracle():
    rng = random.Random(3)
    n = 2
    s = up_space(n, (2,))
    u0 = Fraction(2)
    for _ in range(10):
        a = rand_matrix(rng, s, s)
        b = rand_matrix(rng, s, s)
        da, db = dense_at(a, u0), dense_at(b, u0)
        assert dense_at(a + b, u0) == [
            [da[r][c] + db[r][c] for c in range(len(da[0]))] for r in range(len(da))
        ]
        assert dense_at(a.scale_int(-3), u0) == [
            [-3 * v for v in row] for row in da
        ]


def test_matrix_rank_known_cases():
    assert matrix_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert matrix_rank([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]) == 2
    assert matrix_rank([]) == 0


@pytest.mark.parametrize(
    "k,expected",
    [(2, 2), (3, 5)],
)
def test_commutant_dim_small_tensor_powers(k, expected):
    # dim End((1)^k) for n=2: Temperley-Lieb dimensions
    space = up_space(2, (1,) * k)
    for u0 in (Fraction(7, 2), Fraction(5, 3)):
        assert commutant_dim(space, u0) == expected


def test_commutant_dim_single_factor_is_one():
    for n in (2, 3):
        for k in (1, 2, 3):
            assert commutant_dim(up_space(n, (k,)), Fraction(7, 2)) == 1


def test_pivotal_structure():
    for n in (2, 3):
        assert s2_pivotal_check(n)
