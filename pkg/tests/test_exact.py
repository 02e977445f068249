import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strata_kit.errors import DimensionError, InvertibilityError
from strata_kit.exact import (INF, ONE, ZERO, Laurent, LaurentMatrix, bareiss_determinant, invert_unit, tau,
                              valuation)

F = Fraction
z = Laurent.monomial


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
laurents = st.dictionaries(st.integers(-6, 6), coeffs, max_size=5).map(Laurent)


def test_valuation_examples():
    assert valuation(z(1, 2) + z(1, 3)) == 2
    assert valuation(ZERO) == INF
    assert valuation(z(F(3, 2), -4) + ONE) == -4


def test_zero_coefficients_are_not_stored():
    f = Laurent({-1: 2, 0: 0, 3: F(1, 2)})
    assert f.terms() == {-1: F(2), 3: F(1, 2)}
    assert f - f == ZERO and not (f - f)
    assert Laurent({2: 0}) == ZERO


def test_matrix_algebra_examples():
    A = LaurentMatrix([[z(2, -1), ONE], [z(1, 3), z(-1, 0)]])
    assert LaurentMatrix.identity(2) @ A == A
    assert LaurentMatrix.diagonal([z(1, -1), z(-1, -1)]).trace() == ZERO
    M = LaurentMatrix([[ZERO, z(1, -1)], [ONE, ZERO]])
    assert M @ M == LaurentMatrix.identity(2).scale(z(1, -1))


def test_size_mismatch_is_a_dimension_error():
    with pytest.raises(DimensionError):
        LaurentMatrix.identity(2) @ LaurentMatrix.identity(3)
    with pytest.raises(DimensionError):
        LaurentMatrix.identity(2) + LaurentMatrix.identity(3)


def test_tau_examples():
    assert tau(z(1, 3)) == z(3, 3)
    assert tau(Laurent.const(7)) == ZERO
    assert tau(z(2, -1) + Laurent.const(5)) == z(-2, -1)
    M = LaurentMatrix([[z(1, 2), ONE], [ZERO, z(4, -1)]])
    assert M.tau() == LaurentMatrix([[z(2, 2), ZERO], [ZERO, z(-4, -1)]])


def test_invert_unit_examples():
    assert invert_unit(LaurentMatrix.diagonal([z(1, 1), z(1, -1)])) == LaurentMatrix.diagonal([z(1, -1), z(1, 1)])
    g = LaurentMatrix([[ONE, z(1, 1)], [ZERO, ONE]])
    assert invert_unit(g) == LaurentMatrix([[ONE, z(-1, 1)], [ZERO, ONE]])
    g = LaurentMatrix([[ZERO, ONE], [z(1, 1), ZERO]])
    assert invert_unit(g) == LaurentMatrix([[ZERO, z(1, -1)], [ONE, ZERO]])


def test_invert_unit_rejects_non_units():
    with pytest.raises(InvertibilityError):
        invert_unit(LaurentMatrix([[ONE, ONE], [ONE, ONE]]))
    # determinant 1 + z is a unit in the power series ring but its inverse never terminates
    with pytest.raises(InvertibilityError):
        invert_unit(LaurentMatrix([[ONE + z(1, 1), ZERO], [ZERO, ONE]]), window=8)


def test_determinant_of_triangular():
    M = LaurentMatrix([[z(2, -1), z(5, 3), ONE], [ZERO, z(1, 2), ONE], [ZERO, ZERO, z(-1, 0)]])
    assert M.determinant() == z(-2, 1)
    assert bareiss_determinant([list(r) for r in M.rows]) == z(-2, 1)


def test_substitute_power_and_shift():
    f = z(1, -1) + z(3, 2)
    assert f.substitute_power(3) == z(1, -3) + z(3, 6)
    assert f.shift(2) == z(1, 1) + z(3, 4)


@given(laurents, laurents)
def test_valuation_is_additive(f, g):
    if f and g:
        assert valuation(f * g) == valuation(f) + valuation(g)
    else:
        assert valuation(f * g) == INF


@given(laurents, laurents)
def test_tau_is_a_derivation(f, g):
    assert tau(f * g) == tau(f) * g + f * tau(g)


@given(laurents, laurents, laurents)
def test_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


def _random_unit(rng: random.Random, n: int) -> LaurentMatrix:
    """Monomial-determinant matrix: permuted monomial diagonal times unipotents."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[ZERO] * n for _ in range(n)]
    for i, j in enumerate(perm):
        rows[i][j] = z(rng.choice([1, -1, 2, F(1, 3)]), rng.randint(-2, 2))
    g = LaurentMatrix(rows)
    for _ in range(2):
        i, j = rng.sample(range(n), 2)
        g = g @ (LaurentMatrix.identity(n) + LaurentMatrix.unit(n, i, j, z(rng.randint(-3, 3), rng.randint(-2, 2))))
    return g


def test_invert_unit_on_random_monomial_determinant_matrices():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.choice([2, 3, 4])
        g = _random_unit(rng, n)
        gi = invert_unit(g)
        assert gi @ g == LaurentMatrix.identity(n)
        assert g @ gi == LaurentMatrix.identity(n)


def test_integer_form_round_trip():
    f = z(F(3, 4), -2) + z(F(-5, 6), 1)
    val, den, num = f.integer_form()
    assert val == -2 and den == 12
    assert [int(c) for c in num.coeffs()] == [9, 0, 0, -10]
