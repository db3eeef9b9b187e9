"""Seeded randomized checks of the algebraic identities of word matrices.

Each check draws ``cases`` random instances from a ``random.Random``
and returns the list of counterexamples (empty when the identity held
every time).  The CLI ``props`` subcommand and the acceptance tests
both drive these.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .automaton import Dfa, StateSet, apply
from .exactla import Basis, RationalMatrix, coefficient_sum_check, linear_combination
from .lmatrix import solve_min
from .series import SeriesContext, evaluate, evaluate_dense
from .wordmatrix import (
    WordMatrix,
    matrix_of_word,
    multiply,
    nonzero_columns,
    q_equivalent,
    q_subsumes,
    rank,
)


def random_dfa(rng: random.Random, n: int, k: int) -> Dfa:
    letters = tuple("abcdefgh"[:k])
    return Dfa(n, letters, tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(k)))


def random_word(rng: random.Random, dfa: Dfa, max_len: int = 8) -> tuple:
    return tuple(rng.choice(dfa.alphabet) for _ in range(rng.randint(0, max_len)))


def random_matrix(rng: random.Random, n: int) -> WordMatrix:
    return WordMatrix(tuple(rng.randrange(n) for _ in range(n)))


def random_permutation(rng: random.Random, n: int) -> WordMatrix:
    rows = list(range(n))
    rng.shuffle(rows)
    return WordMatrix(tuple(rows))


def _with_column(rng: random.Random, m: WordMatrix, q: int, extra: float = 0.0) -> WordMatrix:
    """Random matrix with the same column ``q`` as ``m`` (plus, with prob. ``extra`` per row, more units)."""
    rows = []
    for c in m.rows:
        if c == q:
            rows.append(q)
        elif rng.random() < extra:
            rows.append(q)
        else:
            others = [j for j in range(m.n) if j != q]
            rows.append(rng.choice(others) if others else q)
    return WordMatrix(tuple(rows))


def _size(rng):
    return rng.randint(2, 6)


def check_product(rng, cases):
    bad = []
    for _ in range(cases):
        dfa = random_dfa(rng, _size(rng), rng.randint(1, 3))
        u, v = random_word(rng, dfa), random_word(rng, dfa)
        if multiply(matrix_of_word(dfa, u), matrix_of_word(dfa, v)) != matrix_of_word(dfa, u + v):
            bad.append((dfa, u, v))
        elif nonzero_columns(matrix_of_word(dfa, u)) != apply(dfa, StateSet.full(dfa.n), u):
            bad.append((dfa, u))
    return bad


def check_image_shrinks(rng, cases):
    bad = []
    for _ in range(cases):
        n = _size(rng)
        u = random_matrix(rng, n)
        a = random_permutation(rng, n) if rng.random() < 0.25 else random_matrix(rng, n)
        r_u, r_ua, r_au = (nonzero_columns(m) for m in (u, u @ a, a @ u))
        ok = len(r_ua) <= len(r_u) and r_au.issubset(r_u)
        if a.is_permutation():
            ok = ok and r_au == r_u and len(r_ua) == len(r_u)
        if not ok:
            bad.append((u, a))
    return bad


def check_rank(rng, cases):
    bad = []
    for _ in range(cases):
        m = random_matrix(rng, _size(rng))
        if rank(m) != len(nonzero_columns(m)):
            bad.append(m)
    return bad


def check_left_stability(rng, cases):
    bad = []
    for _ in range(cases):
        n = _size(rng)
        q = rng.randrange(n)
        u = random_matrix(rng, n)
        v = _with_column(rng, u, q)
        w = _with_column(rng, u, q, extra=0.3)
        a = random_matrix(rng, n)
        if not q_equivalent(u, v, q) or not q_subsumes(w, u, q):
            bad.append(("setup", u, v, w))
            continue
        if not q_equivalent(a @ u, a @ v, q):
            bad.append((a, u, v, q))
        if not q_subsumes(a @ w, a @ u, q):
            bad.append((a, w, u, q))
    return bad


def check_coefficient_sums(rng, cases):
    bad = []
    for _ in range(cases):
        n = _size(rng)
        ms = [random_matrix(rng, n) for _ in range(rng.randint(1, 4))]
        mode = rng.randrange(3)
        if mode == 0:
            coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in ms]
        elif mode == 1:
            # a genuine word matrix written over a family that spans it
            basis = Basis(n)
            basis.extend(ms)
            target = ms[rng.randrange(len(ms))] @ WordMatrix.identity(n)
            extra = random_matrix(rng, n)
            basis.insert(extra)
            members = [m.to_word_matrix() for m in basis.members]
            coeffs = basis.coefficients(target)
            ms = members
        else:
            m = ms[0]
            ms = [m, m]
            coeffs = [Fraction(1), Fraction(-1)]
        try:
            res = coefficient_sum_check(coeffs, ms)
        except AssertionError as exc:
            bad.append((coeffs, ms, str(exc)))
            continue
        if mode == 1 and (res.kind != "word" or res.total != 1):
            bad.append((coeffs, ms, res.kind))
        if mode == 2 and (res.kind != "zero" or res.total != 0):
            bad.append((coeffs, ms, res.kind))
        if res.total not in (0, 1) and res.kind != "non-word":
            bad.append((coeffs, ms, res.kind))
    return bad


def check_left_distributivity(rng, cases):
    bad = []
    for _ in range(cases):
        n = _size(rng)
        b = random_matrix(rng, n)
        xs = [random_matrix(rng, n) for _ in range(rng.randint(1, 4))]
        taus = [Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in xs]
        left = RationalMatrix.of(b) @ linear_combination(taus, xs)
        right = linear_combination(taus, [b @ x for x in xs])
        if left != right:
            bad.append((b, xs, taus))
        elif linear_combination(taus, xs).to_word_matrix() is not None and right.to_word_matrix() is None:
            bad.append((b, xs, taus, "word-matrix lost"))
    return bad


def check_series_column_count(rng, cases):
    bad = []
    for _ in range(cases):
        n = _size(rng)
        m = random_matrix(rng, n)
        q = rng.randrange(n)
        ctx = SeriesContext.for_state(n, q)
        count = sum(1 for i in range(n) if m.dense()[i][q] == 1)
        if evaluate(ctx, m) != count - 1 or evaluate_dense(ctx, m.dense()) != count - 1:
            bad.append((m, q))
    return bad


def check_minimal_solution(rng, cases):
    bad = []
    for _ in range(cases):
        n = _size(rng)
        u = random_matrix(rng, n)
        q = rng.randrange(n)
        s = WordMatrix.constant(n, q)
        try:
            x = solve_min(u, s, q)
        except (AssertionError, ValueError) as exc:
            bad.append((u, q, str(exc)))
            continue
        if multiply(u, x.matrix) != s or x.series != len(nonzero_columns(u)) - 1:
            bad.append((u, q))
        elif x.q_column != nonzero_columns(u):
            bad.append((u, q, "column"))
    return bad


CHECKS: dict = {
    "product": check_product,
    "image-shrinks": check_image_shrinks,
    "rank": check_rank,
    "left-stability": check_left_stability,
    "coefficient-sums": check_coefficient_sums,
    "left-distributivity": check_left_distributivity,
    "series-column-count": check_series_column_count,
    "minimal-solution": check_minimal_solution,
}


def run_all(seed: int = 0, cases: int = 10_000, only=None) -> dict:
    """Run every check with its own ``Random(seed)``; returns name -> counterexamples."""
    out = {}
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        out[name] = fn(random.Random(f"{seed}:{name}"), cases)
    return out
