from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from syncmat.automaton import StateSet, sync_state
from syncmat.exactla import Basis
from syncmat.series import SeriesContext, evaluate, evaluate_dense, evaluate_linear_combination
from syncmat.wordmatrix import WordMatrix, matrix_of_word, q_equivalent, q_subsumes


def test_reset_matrix_value(kari, kari_s):
    q = sync_state(kari, kari_s)
    ctx = SeriesContext.for_state(6, q)
    assert evaluate(ctx, matrix_of_word(kari, kari_s)) == 5


def test_empty_column_gives_minus_one(cerny4):
    ctx = SeriesContext.for_state(4, 0)
    assert evaluate(ctx, matrix_of_word(cerny4, "b")) == -1
    assert evaluate(ctx, WordMatrix.identity(4)) == 0


def test_general_set_and_dense_formula():
    ctx = SeriesContext(3, StateSet.from_bits("101"))
    m = WordMatrix((0, 0, 2))
    assert evaluate(ctx, m) == 3 - 2
    assert evaluate_dense(ctx, m.dense()) == 1
    assert evaluate(ctx, [[2, 0, 0], [0, 0, 0], [0, 0, 0]]) == 0


def test_context_checks_size():
    with pytest.raises(ValueError):
        SeriesContext(3, StateSet.full(4))
    with pytest.raises(ValueError):
        evaluate(SeriesContext.for_state(3, 0), WordMatrix.identity(4))


def test_combination_is_linear():
    ctx = SeriesContext.for_state(3, 0)
    a, b = WordMatrix((0, 0, 1)), WordMatrix((0, 1, 1))
    value = evaluate_linear_combination(ctx, [(Fraction(1, 2), a), (Fraction(3), b)])
    assert value == Fraction(1, 2) * 1 + 3 * 0
    assert evaluate_linear_combination(ctx, []) == 0


def test_combination_that_is_a_word_matrix_agrees():
    n, q = 4, 1
    ctx = SeriesContext.for_state(n, q)
    family = [WordMatrix((0, 1, 1, 3)), WordMatrix((1, 1, 2, 3)), WordMatrix((0, 0, 2, 2)), WordMatrix((1, 0, 2, 3))]
    basis = Basis(n)
    basis.extend(family)
    target = WordMatrix((1, 1, 2, 3)) @ WordMatrix.identity(n)
    coeffs = basis.coefficients(target)
    members = [m.to_word_matrix() for m in basis.members]
    assert evaluate_linear_combination(ctx, list(zip(coeffs, members))) == evaluate(ctx, target)


def square(n):
    return st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(lambda r: WordMatrix(tuple(r)))


pairs = st.integers(1, 6).flatmap(lambda n: st.tuples(square(n), square(n), st.integers(0, n - 1)))


@given(pairs)
def test_equivalent_matrices_share_series_value(data):
    u, v, q = data
    ctx = SeriesContext.for_state(u.n, q)
    if q_equivalent(u, v, q):
        assert evaluate(ctx, u) == evaluate(ctx, v)
    if q_subsumes(u, v, q):
        assert evaluate(ctx, v) <= evaluate(ctx, u)


@given(pairs)
def test_value_is_column_count_minus_one(data):
    m, _, q = data
    count = sum(1 for c in m.rows if c == q)
    assert evaluate(SeriesContext.for_state(m.n, q), m) == count - 1
