"""Rank-two L-matrices and the equation M_u L_x = M_s.

An L-matrix keeps column ``q`` of a word matrix and sends every other
row to one further column chosen by the number of units in column
``q``: with ``k`` units there, the other ``n-k`` rows go to column
``n-k`` (0-based).  Column positions are counted in the frame where
``q`` is the first state; for ``q != 0`` the column that would be
``q`` is column 0 instead, i.e. states 0 and ``q`` are swapped.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .automaton import Dfa, NotSynchronizing, StateSet, format_word, image_of_all
from .exactla import Basis
from .wordmatrix import (
    WordMatrix,
    matrix_of_word,
    multiply,
    nonzero_columns,
    q_subsumes,
)

MAX_INVERSES = 10**6
EXHAUSTIVE_SUBSET_LIMIT = 16


class NoCanonicalL(ValueError):
    pass


def off_column(n: int, units: int, q: int) -> Optional[int]:
    """Column receiving the rows outside column ``q``; None when ``units == n``."""
    if not 1 <= units <= n:
        raise ValueError(f"column q must hold between 1 and {n} units, got {units}")
    if units == n:
        return None
    col = n - units
    return 0 if col == q else col


@dataclass(frozen=True)
class LMatrix:
    matrix: WordMatrix
    q: int
    column: Optional[int]  # the second nonzero column; None in the reset boundary case

    @classmethod
    def from_column(cls, n: int, units: StateSet, q: int) -> "LMatrix":
        """The L-matrix whose column ``q`` holds units exactly at ``units``."""
        if units.n != n:
            raise ValueError(f"vector length {units.n} does not match n={n}")
        col = off_column(n, len(units), q)
        rows = tuple(q if i in units else col for i in range(n))
        return cls(WordMatrix(rows), q, col)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def q_column(self) -> StateSet:
        return self.matrix.column(self.q)

    @property
    def index(self) -> int:
        """1-based index ``i`` with ``(S_q) = n - i``; 1 for the reset boundary."""
        return self.n - (len(self.q_column) - 1)

    @property
    def canonical(self) -> bool:
        return 1 < self.index <= self.n

    @property
    def series(self) -> int:
        return len(self.q_column) - 1


def canonical_L(m: WordMatrix, q: int) -> LMatrix:
    """The L-matrix q-equivalent to ``m``."""
    col = m.column(q)
    k = len(col)
    if k == m.n:
        raise NoCanonicalL("no canonical L for synchronizing matrix")
    if k == 0:
        raise NoCanonicalL(f"column {q + 1} of the matrix has no units")
    return LMatrix.from_column(m.n, col, q)


def _check_reset_matrix(s_matrix: WordMatrix, q: int):
    if not s_matrix.is_synchronizing():
        raise ValueError("target matrix is not the matrix of a reset word")
    if s_matrix.rows[0] != q:
        raise ValueError(
            f"target matrix resets to state {s_matrix.rows[0] + 1}, not to q = {q + 1}"
        )


def solve_min(u_matrix: WordMatrix, s_matrix: WordMatrix, q: int) -> LMatrix:
    """Minimal solution of ``M_u L = M_s``: column ``q`` of ``L`` is exactly R(u)."""
    if u_matrix.n != s_matrix.n:
        raise ValueError(f"dimension mismatch: {u_matrix.n} vs {s_matrix.n}")
    _check_reset_matrix(s_matrix, q)
    sol = LMatrix.from_column(u_matrix.n, nonzero_columns(u_matrix), q)
    if multiply(u_matrix, sol.matrix) != s_matrix:
        raise AssertionError("minimal solution does not satisfy the equation")
    return sol


class Enumeration(NamedTuple):
    items: list
    count: int
    complete: bool  # False when only counted or cut off at a cap


def solutions_by_subsumption(
    min_sol: LMatrix,
    u_matrix: WordMatrix,
    s_matrix: WordMatrix,
    q: int,
    limit: int = 4096,
) -> Enumeration:
    """All L-matrices solving ``M_u L = M_s``: those whose column q contains min_sol's.

    Up to ``limit`` solutions are materialised and checked; the count
    is always exact.  For ``n <= 16`` every non-superset column is also
    checked to fail.
    """
    n = u_matrix.n
    _check_reset_matrix(s_matrix, q)
    base = min_sol.q_column
    free = [i for i in range(n) if i not in base]
    count = 2 ** len(free)
    items = []
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            if len(items) >= limit:
                break
            cand = LMatrix.from_column(n, StateSet(n, base.mask | sum(1 << i for i in extra)), q)
            if multiply(u_matrix, cand.matrix) != s_matrix:
                raise AssertionError(f"superset column {cand.q_column} fails the equation")
            if not q_subsumes(cand.matrix, min_sol.matrix, q):
                raise AssertionError("enumerated candidate does not subsume the minimal solution")
            items.append(cand)
    if n <= EXHAUSTIVE_SUBSET_LIMIT:
        for mask in range(1, 1 << n):
            if mask & base.mask == base.mask:
                continue
            cand = LMatrix.from_column(n, StateSet(n, mask), q)
            if multiply(u_matrix, cand.matrix) == s_matrix:
                raise AssertionError(f"non-superset column {cand.q_column} solves the equation")
    return Enumeration(items, count, len(items) == count)


# --- generalized inverses ----------------------------------------------------

@dataclass(frozen=True)
class GeneralizedInverse:
    matrix: WordMatrix
    source: WordMatrix
    choice: tuple  # (column j, chosen row i) for each nonzero column of source

    def is_invertible(self) -> bool:
        return self.matrix.is_permutation()


def _column_rows(m: WordMatrix) -> dict:
    cols = {}
    for i, c in enumerate(m.rows):
        cols.setdefault(c, []).append(i)
    return dict(sorted(cols.items()))


def count_generalized_inverses(m: WordMatrix, policy: str = "all") -> int:
    cols = _column_rows(m)
    zero_rows = m.n - len(cols)
    picks = math.prod(len(r) for r in cols.values())
    if policy == "all":
        return picks * m.n ** zero_rows
    if policy == "invertible_only":
        return picks * math.factorial(zero_rows)
    if policy == "canonical":
        return 1
    raise ValueError(f"unknown policy {policy!r}")


def generalized_inverses(m: WordMatrix, policy: str = "canonical", cap: int = MAX_INVERSES) -> Enumeration:
    """Left generalized inverses of ``m``.

    For each nonzero column ``j`` one row ``i`` with a unit at ``(i, j)``
    is chosen and the inverse gets a unit at ``(j, i)``; rows ``j`` for
    zero columns are filled freely.  ``canonical`` takes the smallest
    row per column and fills the free rows with the smallest unused
    columns in order, which always gives a permutation matrix.
    ``all`` enumerates every choice and fill; ``invertible_only``
    keeps the fills that make a permutation matrix.
    """
    n = m.n
    cols = _column_rows(m)
    zero_rows = [j for j in range(n) if j not in cols]
    total = count_generalized_inverses(m, policy)

    def build(picks, fill):
        rows = [None] * n
        for j, i in zip(cols, picks):
            rows[j] = i
        for j, c in zip(zero_rows, fill):
            rows[j] = c
        return GeneralizedInverse(WordMatrix(tuple(rows)), m, tuple(zip(cols, picks)))

    if policy == "canonical":
        picks = [rs[0] for rs in cols.values()]
        unused = sorted(set(range(n)) - set(picks))
        return Enumeration([build(picks, unused)], 1, True)

    items = []
    for picks in itertools.product(*cols.values()):
        if policy == "all":
            fills = itertools.product(range(n), repeat=len(zero_rows))
        else:
            fills = itertools.permutations(sorted(set(range(n)) - set(picks)))
        for fill in fills:
            if len(items) >= cap:
                return Enumeration(items, total, False)
            items.append(build(picks, fill))
    return Enumeration(items, total, True)


class TransportResult(NamedTuple):
    product: WordMatrix  # M_u M_a M_a^-
    l_y: LMatrix  # minimal solution for M_{ua}
    series_x: int
    series_y: int


class TransportError(ValueError):
    pass


def inverse_transport(
    u_matrix: WordMatrix,
    a_matrix: WordMatrix,
    a_inv: GeneralizedInverse,
    x_sol: LMatrix,
    q: int,
) -> TransportResult:
    """Carry a solution of ``M_u L = M_s`` over to ``M_{ua} L = M_s`` through ``M_a^-``."""
    n = u_matrix.n
    s_matrix = WordMatrix.constant(n, q)
    if multiply(u_matrix, x_sol.matrix) != s_matrix:
        raise TransportError("x_sol does not solve M_u L = M_s")
    inv = a_inv.matrix if isinstance(a_inv, GeneralizedInverse) else a_inv
    t = multiply(multiply(u_matrix, a_matrix), inv)
    r_u = nonzero_columns(u_matrix)
    extra = [j for j in nonzero_columns(t) if j not in r_u]
    if extra:
        raise TransportError(
            f"column {extra[0] + 1} of M_u M_a M_a^- is nonzero but column of M_u is zero"
        )
    if multiply(t, x_sol.matrix) != s_matrix:
        raise AssertionError("M_u M_a M_a^- L_x differs from M_s")
    ua = multiply(u_matrix, a_matrix)
    if multiply(ua, multiply(inv, x_sol.matrix)) != s_matrix:
        raise AssertionError("M_a^- L_x does not solve M_{ua} L = M_s")
    l_y = solve_min(ua, s_matrix, q)
    series_x = len(r_u) - 1
    if a_matrix.is_permutation() and l_y.series != series_x:
        raise AssertionError("a permutation changed the minimal series value")
    return TransportResult(t, l_y, series_x, l_y.series)


# --- chains ----------------------------------------------------------------

@dataclass
class ChainRow:
    word: tuple
    image: StateSet  # c_u, the actual image of the full set
    vector: StateSet  # column q of the L-matrix used (c_u, or a superset c_v)
    lmatrix: LMatrix
    rank: int  # rank of the family up to and including this row
    substituted: bool = False
    solves: bool = True  # M_u L = M_s holds for this row's L

    @property
    def size(self) -> int:
        return len(self.vector)

    @property
    def series(self) -> int:
        return self.lmatrix.series


@dataclass
class ChainReport:
    q: int
    s: tuple
    rows: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.rows[-1].rank if self.rows else 0

    @property
    def basis_matrices(self) -> list:
        return [r.lmatrix.matrix for r in self.rows]

    def to_tsv(self) -> str:
        lines = []
        for r in self.rows:
            lines.append(
                f"{format_word(r.word)}\t{r.vector.to_bits()}\t{r.size}\t{r.series}\t{r.rank}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "q": self.q + 1,
                "s": format_word(self.s),
                "rank": self.rank,
                "rows": [
                    {
                        "word": format_word(r.word),
                        "vector": r.vector.to_bits(),
                        "image": r.image.to_bits(),
                        "size": r.size,
                        "series": r.series,
                        "rank": r.rank,
                        "substituted": r.substituted,
                        "solves": r.solves,
                    }
                    for r in self.rows
                ],
            }
        )


def independent_chain(
    dfa: Dfa,
    q: int,
    s: Sequence,
    rows: Optional[Iterable] = None,
    strict: bool = True,
) -> ChainReport:
    """L-matrices along a reset word ``s`` and the exact rank of the family.

    Without ``rows`` every nonempty prefix ``u`` of ``s`` contributes
    the minimal solution of ``M_u L = M_s``, whose column ``q`` is c_u.
    ``rows`` may instead supply ``(word, vector)`` pairs (e.g. a
    transcribed table) used verbatim.  A vector that is not a superset
    of the word's image does not solve the equation; with ``strict``
    that raises, otherwise the row is kept with ``solves=False``.
    """
    s = dfa.check_word(s)
    img = image_of_all(dfa, s)
    if len(img) != 1:
        raise NotSynchronizing(f"{format_word(s)} leaves {len(img)} states")
    if img.members()[0] != q:
        raise ValueError(f"{format_word(s)} resets to state {img.members()[0] + 1}, not {q + 1}")
    s_matrix = WordMatrix.constant(dfa.n, q)
    if rows is None:
        rows = [(s[:k], None) for k in range(1, len(s) + 1)]
    report = ChainReport(q, s)
    basis = Basis(dfa.n)
    for word, vector in rows:
        word = dfa.check_word(word)
        u = matrix_of_word(dfa, word)
        image = nonzero_columns(u)
        if vector is None:
            lm = solve_min(u, s_matrix, q)
        else:
            lm = LMatrix.from_column(dfa.n, vector, q)
        solves = multiply(u, lm.matrix) == s_matrix
        if solves != image.issubset(lm.q_column):
            raise AssertionError("equation check disagrees with column subsumption")
        if strict and not solves:
            raise ValueError(
                f"vector {vector} does not contain the image {image} of {format_word(word)}"
            )
        basis.insert(lm.matrix)
        report.rows.append(
            ChainRow(word, image, lm.q_column, lm, basis.dimension, lm.q_column != image, solves)
        )
    return report
