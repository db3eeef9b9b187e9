"""Matrices of words: 0/1 matrices with exactly one unit per row.

A :class:`WordMatrix` stores, for each row, the column of its unit,
so the one-unit-per-row shape holds by construction and products are
just composition of maps.  The matrix of the empty word is the
identity (the monoid unit), not the zero matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automaton import Dfa, StateSet


@dataclass(frozen=True)
class WordMatrix:
    rows: tuple  # rows[i] = column of the unit in row i (0-based)

    def __post_init__(self):
        rows = tuple(self.rows)
        n = len(rows)
        for i, j in enumerate(rows):
            if not isinstance(j, int) or not 0 <= j < n:
                raise ValueError(f"row {i + 1} has its unit in column {j!r}, outside 1..{n}")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "WordMatrix":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, column: int) -> "WordMatrix":
        """All units in one column: the matrix of a reset word."""
        return cls((column,) * n)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "WordMatrix":
        dense = [list(r) for r in dense]
        n = len(dense)
        rows = []
        for i, r in enumerate(dense):
            if len(r) != n:
                raise ValueError(f"row {i + 1} has length {len(r)}, expected {n}")
            if any(x not in (0, 1) for x in r) or sum(r) != 1:
                raise ValueError(f"row {i + 1} must hold exactly one unit")
            rows.append(r.index(1))
        return cls(tuple(rows))

    def dense(self) -> list:
        return [[1 if j == c else 0 for j in range(self.n)] for c in self.rows]

    def column(self, q: int) -> StateSet:
        """Rows with a unit in column ``q``."""
        _check_index(q, self.n)
        return StateSet.of(self.n, (i for i, c in enumerate(self.rows) if c == q))

    def is_permutation(self) -> bool:
        return len(set(self.rows)) == self.n

    def is_synchronizing(self) -> bool:
        return len(set(self.rows)) == 1

    def __matmul__(self, other: "WordMatrix") -> "WordMatrix":
        return multiply(self, other)

    def __str__(self):
        return format_dense(self)


def _check_index(q, n):
    if not isinstance(q, int) or not 0 <= q < n:
        raise ValueError(f"state index {q!r} out of range for n={n}")


def matrix_of_word(dfa: Dfa, word) -> WordMatrix:
    """Row ``i`` has its unit in the column of ``i`` under ``word``."""
    word = dfa.check_word(word)
    rows = list(range(dfa.n))
    for a in word:
        delta = dfa.delta[dfa.letter_index(a)]
        rows = [delta[c] for c in rows]
    return WordMatrix(tuple(rows))


def letter_matrices(dfa: Dfa) -> dict:
    return {a: WordMatrix(dfa.delta[k]) for k, a in enumerate(dfa.alphabet)}


def multiply(a: WordMatrix, b: WordMatrix) -> WordMatrix:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return WordMatrix(tuple(b.rows[c] for c in a.rows))


def nonzero_columns(m: WordMatrix) -> StateSet:
    return StateSet.of(m.n, set(m.rows))


def rank(m: WordMatrix) -> int:
    """Rank of the dense 0/1 matrix over the rationals (computed, not inferred)."""
    from .exactla import rational_rank

    return rational_rank(m.dense())


def q_equivalent(a: WordMatrix, b: WordMatrix, q: int) -> bool:
    """Column ``q`` of ``a`` equals column ``q`` of ``b``."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return a.column(q) == b.column(q)


def q_subsumes(a: WordMatrix, b: WordMatrix, q: int) -> bool:
    """Units of column ``q`` of ``b`` all appear in column ``q`` of ``a``."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return b.column(q).issubset(a.column(q))


# --- display ---------------------------------------------------------------

def format_dense(m: WordMatrix) -> str:
    return "\n".join("".join(str(x) for x in r) for r in m.dense())


def format_row_image(m: WordMatrix) -> str:
    return "row-image: " + " ".join(str(c + 1) for c in m.rows)


def parse_matrix(text: str) -> WordMatrix:
    """Parse either the dense 0/1 block or the ``row-image: j1 ... jn`` form."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix text")
    if lines[0].startswith("row-image:"):
        if len(lines) != 1:
            raise ValueError("row-image form is a single line")
        cols = [int(x) - 1 for x in lines[0][len("row-image:"):].split()]
        return WordMatrix(tuple(cols))
    dense = []
    for ln in lines:
        cells = ln.split() if " " in ln else list(ln)
        try:
            dense.append([int(x) for x in cells])
        except ValueError:
            raise ValueError(f"bad matrix row {ln!r}") from None
    return WordMatrix.from_dense(dense)
