"""The rational series (S, u) = C (M_u - E) P^t.

``C`` is the all-ones row, ``P^t`` the characteristic column of a state
set ``P`` and ``E`` the identity, so the value is the number of units
that ``M_u`` puts in the columns of ``P``, minus ``|P|``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automaton import StateSet
from .wordmatrix import WordMatrix


@dataclass(frozen=True)
class SeriesContext:
    n: int
    P: StateSet

    def __post_init__(self):
        if self.P.n != self.n:
            raise ValueError(f"P has length {self.P.n}, expected {self.n}")

    @classmethod
    def for_state(cls, n: int, q: int) -> "SeriesContext":
        """The series S_q, depending on the single state ``q``."""
        return cls(n, StateSet.of(n, [q]))

    def column(self) -> list:
        """P^t as a list of 0/1 integers."""
        return [1 if j in self.P else 0 for j in range(self.n)]


def evaluate(ctx: SeriesContext, m) -> int:
    """Exact value of the series on a word matrix or any square integer matrix.

    For a word matrix and ``P = {q}`` this is the number of units in
    column ``q`` minus one; for other matrices only the general formula
    applies.
    """
    if isinstance(m, WordMatrix):
        if m.n != ctx.n:
            raise ValueError(f"dimension mismatch: {m.n} vs {ctx.n}")
        return sum(1 for c in m.rows if c in ctx.P) - len(ctx.P)
    return evaluate_dense(ctx, m)


def evaluate_dense(ctx: SeriesContext, dense) -> Fraction:
    if hasattr(dense, "rows") and callable(dense.rows):
        dense = dense.rows()
    dense = [list(r) for r in dense]
    if len(dense) != ctx.n or any(len(r) != ctx.n for r in dense):
        raise ValueError(f"dimension mismatch: expected {ctx.n}x{ctx.n}")
    pt = ctx.column()
    total = Fraction(0)
    for i, r in enumerate(dense):
        for j, x in enumerate(r):
            if pt[j]:
                total += Fraction(x) - (1 if i == j else 0)
    return total


def evaluate_linear_combination(ctx: SeriesContext, terms: Sequence) -> Fraction:
    """``sum(lam * (S, u))`` over ``(lam, M_u)`` terms.

    When the combined matrix is itself a word matrix, its own series
    value is computed too and must agree.
    """
    from .exactla import linear_combination

    terms = [(Fraction(lam), m) for lam, m in terms]
    if not terms:
        return Fraction(0)
    for _, m in terms:
        if m.n != ctx.n:
            raise ValueError(f"dimension mismatch: {m.n} vs {ctx.n}")
    value = sum((lam * evaluate(ctx, m) for lam, m in terms), Fraction(0))
    combined = linear_combination([lam for lam, _ in terms], [m for _, m in terms])
    as_word = combined.to_word_matrix()
    if as_word is not None and evaluate(ctx, as_word) != value:
        raise AssertionError(
            f"combination is a word matrix with series {evaluate(ctx, as_word)}, terms give {value}"
        )
    return value
