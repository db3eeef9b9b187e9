"""Exact rational linear algebra on n x n matrices flattened row-major.

Everything is :class:`fractions.Fraction`; no floats.  A matrix ``M``
becomes the vector ``(M[0][0], M[0][1], ..., M[n-1][n-1])`` and every
coefficient vector reported here refers to that ordering or to the
insertion order of a :class:`Basis`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .automaton import Dfa, format_word
from .wordmatrix import WordMatrix, matrix_of_word


@dataclass(frozen=True)
class RationalMatrix:
    n: int
    entries: tuple  # n*n Fractions, row-major

    def __post_init__(self):
        entries = tuple(x if type(x) is Fraction else Fraction(x) for x in self.entries)
        if len(entries) != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, m) -> "RationalMatrix":
        if isinstance(m, RationalMatrix):
            return m
        if isinstance(m, WordMatrix):
            return cls(m.n, [1 if m.rows[i] == j else 0 for i in range(m.n) for j in range(m.n)])
        rows = [list(r) for r in m]
        return cls(len(rows), [x for r in rows for x in r])

    @classmethod
    def zero(cls, n: int) -> "RationalMatrix":
        return cls(n, (0,) * (n * n))

    def rows(self) -> list:
        return [list(self.entries[i * self.n:(i + 1) * self.n]) for i in range(self.n)]

    def __add__(self, other):
        other = RationalMatrix.of(other)
        _same_n(self, other)
        return RationalMatrix(self.n, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        other = RationalMatrix.of(other)
        _same_n(self, other)
        return RationalMatrix(self.n, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.n, [c * a if a else a for a in self.entries])

    def __matmul__(self, other):
        other = RationalMatrix.of(other)
        _same_n(self, other)
        n = self.n
        a, b = self.entries, other.entries
        out = [Fraction(0)] * (n * n)
        for i in range(n):
            for t in range(n):
                x = a[i * n + t]
                if not x:
                    continue
                for j in range(n):
                    y = b[t * n + j]
                    if y:
                        out[i * n + j] += x * y
        return RationalMatrix(n, out)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_word_matrix(self) -> Optional[WordMatrix]:
        """The word matrix with these entries, or None if this is not one."""
        rows = []
        for r in self.rows():
            if any(x not in (0, 1) for x in r) or sum(r) != 1:
                return None
            rows.append(r.index(1))
        return WordMatrix(tuple(rows))


def _same_n(a, b):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def linear_combination(coeffs: Sequence, ms: Sequence) -> RationalMatrix:
    if len(coeffs) != len(ms):
        raise ValueError("need one coefficient per matrix")
    if not ms:
        raise ValueError("empty combination")
    ms = [RationalMatrix.of(m) for m in ms]
    n = ms[0].n
    total = [Fraction(0)] * (n * n)
    for c, m in zip(coeffs, ms):
        _same_n(m, ms[0])
        c = Fraction(c)
        for idx, x in enumerate(m.entries):
            if x:
                total[idx] += c * x
    return RationalMatrix(n, total)


def rational_rank(rows: Iterable[Sequence]) -> int:
    """Rank of a rectangular matrix given as rows, by exact elimination."""
    work = [[Fraction(x) for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / p[col]
                work[i] = [x - f * y for x, y in zip(work[i], p)]
        rank += 1
        if rank == len(work):
            break
    return rank


class Basis:
    """Incrementally built basis of a span of n x n matrices.

    Members are kept in insertion order; internally the flattenings
    live in reduced echelon form together with their expression in
    terms of the members, so membership queries return coefficients
    over the members directly.
    """

    def __init__(self, n: int):
        self.n = n
        self.members: list = []
        self._pivots: list = []  # (pivot column, reduced row, coefficients over members)

    def __len__(self):
        return len(self.members)

    @property
    def dimension(self) -> int:
        return len(self.members)

    def _reduce(self, m: RationalMatrix):
        vec = list(m.entries)
        combo = [Fraction(0)] * len(self.members)
        for col, row, coeffs in self._pivots:
            f = vec[col]
            if f:
                vec = [x - f * y for x, y in zip(vec, row)]
                for k, c in enumerate(coeffs):
                    combo[k] += f * c
        return vec, combo

    def coefficients(self, m) -> Optional[list]:
        """Coefficients of ``m`` over :attr:`members`, or None if independent."""
        m = RationalMatrix.of(m)
        if m.n != self.n:
            raise ValueError(f"dimension mismatch: {m.n} vs {self.n}")
        vec, combo = self._reduce(m)
        if any(vec):
            return None
        return combo

    def insert(self, m) -> Optional[list]:
        """Add ``m`` if independent (returns None), else return its coefficients."""
        m = RationalMatrix.of(m)
        if m.n != self.n:
            raise ValueError(f"dimension mismatch: {m.n} vs {self.n}")
        vec, combo = self._reduce(m)
        if not any(vec):
            return combo
        col = next(i for i, x in enumerate(vec) if x)
        inv = 1 / vec[col]
        vec = [x * inv for x in vec]
        # new member index is len(members): vec = m - sum(combo_k * member_k)
        coeffs = [-c * inv for c in combo] + [inv]
        for k, (pcol, prow, pco) in enumerate(self._pivots):
            f = prow[col]
            if f:
                prow = [x - f * y for x, y in zip(prow, vec)]
                pco = [a - f * b for a, b in zip(pco + [Fraction(0)], coeffs)]
            else:
                pco = pco + [Fraction(0)]
            self._pivots[k] = (pcol, prow, pco)
        self._pivots.append((col, vec, coeffs))
        self.members.append(m)
        return None

    def extend(self, ms: Iterable) -> int:
        added = 0
        for m in ms:
            if self.insert(m) is None:
                added += 1
        return added


def rank_of_family(ms: Iterable) -> int:
    """Rank of a family of n x n matrices viewed as vectors of length n^2."""
    ms = [RationalMatrix.of(m) for m in ms]
    if not ms:
        return 0
    for m in ms:
        _same_n(m, ms[0])
    return rational_rank(m.entries for m in ms)


def in_span(m, basis: Basis) -> Optional[list]:
    """Exact coefficients of ``m`` over ``basis.members``, or None ("independent")."""
    return basis.coefficients(m)


def canonical_basis(n: int, k: int) -> list:
    """Basis of the span of all word matrices whose units lie in columns 0..k-1.

    For ``k >= 2``: the matrices with a unit at ``(i, j)`` (``j < k-1``)
    and every other row in column ``k-1``, ordered by ``(i, j)``, then
    the matrix with all units in column ``k-1``.  That is
    ``n*(k-1) + 1`` matrices.
    """
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    last = k - 1
    out = []
    for i in range(n):
        for j in range(last):
            rows = [last] * n
            rows[i] = j
            out.append(WordMatrix(tuple(rows)))
    out.append(WordMatrix((last,) * n))
    return out


class CoefficientCheck(NamedTuple):
    total: Fraction
    kind: str  # "word", "zero" or "non-word"
    combination: RationalMatrix


def coefficient_sum_check(coeffs: Sequence, ms: Sequence) -> CoefficientCheck:
    """Classify ``sum(c * M)`` and check it against the coefficient sum.

    A word matrix forces the coefficients to sum to 1 and the zero
    matrix forces 0; any other sum means the result is not a word
    matrix.  A violation raises ``AssertionError``.
    """
    coeffs = [Fraction(c) for c in coeffs]
    for m in ms:
        if not isinstance(m, WordMatrix):
            raise TypeError("coefficient_sum_check takes word matrices")
    comb = linear_combination(coeffs, ms)
    total = sum(coeffs, Fraction(0))
    if comb.is_zero():
        kind = "zero"
    elif comb.to_word_matrix() is not None:
        kind = "word"
    else:
        kind = "non-word"
    expected = {"word": 1, "zero": 0}.get(kind)
    if expected is not None and total != expected:
        raise AssertionError(f"{kind} combination with coefficient sum {total}")
    # every row of a combination of word matrices sums to the coefficient total
    for r in comb.rows():
        if sum(r) != total:
            raise AssertionError(f"row sum {sum(r)} differs from coefficient sum {total}")
    return CoefficientCheck(total, kind, comb)


@dataclass
class ClosureResult:
    basis: Basis
    words: list  # word of each basis member, in insertion order
    trace: list  # dimension after each processed (letter, word) step
    complete: bool  # False if a cap stopped the search before the fixpoint


def span_left_closure(dfa: Dfa, seed_words: Sequence, cap: Optional[int] = None) -> ClosureResult:
    """Grow the span of the seed matrices by left letter-multiplication to a fixpoint.

    At the fixpoint the span is closed under left multiplication by any
    word.  ``cap`` bounds the number of basis insertions (default
    ``n(n-1)+1``, the largest possible dimension); the number of
    processed steps is bounded by four times that many words.
    """
    n = dfa.n
    if cap is None:
        cap = n * (n - 1) + 1
    max_iterations = 4 * cap * len(dfa.alphabet)
    basis = Basis(n)
    words = []
    trace = []
    queue = []
    for w in seed_words:
        w = dfa.check_word(w)
        if basis.insert(matrix_of_word(dfa, w)) is None:
            words.append(w)
            queue.append(w)
    trace.append(basis.dimension)
    complete = True
    iterations = 0
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        for beta in dfa.alphabet:
            if len(basis) >= cap or iterations >= max_iterations:
                complete = False
                break
            iterations += 1
            v = (beta,) + w
            if basis.insert(matrix_of_word(dfa, v)) is None:
                words.append(v)
                queue.append(v)
            trace.append(basis.dimension)
        if not complete:
            break
    if complete and len(basis) >= cap and head < len(queue):
        complete = False
    return ClosureResult(basis, words, trace, complete)


# --- emission ----------------------------------------------------------------

def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def coefficients_tsv(coeffs: Sequence, labels: Optional[Sequence[str]] = None) -> str:
    lines = []
    for k, c in enumerate(coeffs):
        label = labels[k] if labels else str(k)
        lines.append(f"{label}\t{format_fraction(c)}")
    return "\n".join(lines) + ("\n" if lines else "")


def coefficients_json(coeffs: Sequence, labels: Optional[Sequence[str]] = None) -> str:
    items = [
        {"member": labels[k] if labels else k, "coefficient": format_fraction(c)}
        for k, c in enumerate(coeffs)
    ]
    return json.dumps(items)


def trace_tsv(result: ClosureResult) -> str:
    lines = [f"{step}\t{dim}" for step, dim in enumerate(result.trace)]
    return "\n".join(lines) + "\n"


def trace_json(result: ClosureResult) -> str:
    return json.dumps(
        {
            "dimension": result.basis.dimension,
            "complete": result.complete,
            "trace": result.trace,
            "words": [format_word(w) for w in result.words],
        }
    )
