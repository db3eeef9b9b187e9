"""Example automata, transcribed (word, image) tables, and small-DFA audits."""
from __future__ import annotations

import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import NamedTuple, Optional

from .automaton import Dfa, StateSet, image_of_all, parse_word
from .exactla import rank_of_family
from .lmatrix import ChainReport, independent_chain
from .wordmatrix import matrix_of_word

log = logging.getLogger(__name__)

DEFAULT_CENSUS_BUDGET = 4**8


def build_cerny(n: int) -> Dfa:
    """Cerny automaton: ``a`` is the cycle i -> i+1, ``b`` merges state 1 into 2."""
    if n < 2:
        raise ValueError("the Cerny automaton needs n >= 2")
    a = tuple((p + 1) % n for p in range(n))
    b = tuple(1 if p == 0 else p for p in range(n))
    return Dfa(n, ("a", "b"), (a, b))


# edges read off the figure, by figure label
_KARI_FIGURE = {
    "a": {0: 1, 1: 2, 2: 0, 3: 4, 4: 5, 5: 3},
    "b": {0: 3, 3: 0, 5: 0, 1: 1, 2: 2, 4: 4},
}

_ROMAN_FIGURE = {
    "a": {1: 3, 2: 1, 3: 1, 4: 4, 5: 5},
    "b": {1: 1, 2: 3, 3: 2, 4: 4, 5: 5},
    "c": {1: 4, 2: 2, 3: 5, 4: 1, 5: 3},
}


def _from_figure(table_id: str, figure: dict) -> Dfa:
    labels = {int(k): v - 1 for k, v in golden_table(table_id).figure_labels.items()}
    n = len(labels)
    maps = {a: {labels[p]: labels[r] for p, r in edges.items()} for a, edges in figure.items()}
    return Dfa.from_maps(n, maps)


def build_kari() -> Dfa:
    """Kari's 6-state, 2-letter automaton with a shortest reset word of length 25."""
    return _from_figure("kari", _KARI_FIGURE)


def build_roman() -> Dfa:
    """Roman's 5-state, 3-letter automaton with a shortest reset word of length 16."""
    return _from_figure("roman", _ROMAN_FIGURE)


# --- golden tables -------------------------------------------------------------

@dataclass(frozen=True)
class GoldenRow:
    word: tuple
    printed: StateSet
    image: StateSet  # the image of the full set; equals printed unless flagged
    size: Optional[int] = None
    flag: Optional[str] = None  # "superset", "not-superset" or "erratum"

    @property
    def chain_vector(self) -> StateSet:
        """Column q used for this line's L-matrix: the printed vector unless it is a typo."""
        return self.image if self.flag == "erratum" else self.printed


@dataclass(frozen=True)
class GoldenTable:
    id: str
    version: int
    n: int
    alphabet: tuple
    s: tuple
    figure_labels: dict
    rows: tuple
    notes: str = ""

    @property
    def q(self) -> int:
        return self.rows[-1].image.members()[0]


def golden_table(table_id: str) -> GoldenTable:
    raw = json.loads(resources.files("syncmat.data").joinpath(f"{table_id}.json").read_text("utf-8"))
    alphabet = tuple(raw["alphabet"])
    rows = []
    for r in raw["rows"]:
        printed = StateSet.from_bits(r["printed"])
        image = StateSet.from_bits(r.get("image", r["printed"]))
        if printed.n != raw["n"]:
            raise ValueError(f"{table_id}: vector {r['printed']} has wrong length")
        rows.append(GoldenRow(parse_word(r["word"], alphabet), printed, image, r.get("size"), r.get("flag")))
    return GoldenTable(
        raw["id"], raw["version"], raw["n"], alphabet, parse_word(raw["s"], alphabet),
        raw["figure_labels"], tuple(rows), raw.get("notes", ""),
    )


GOLDEN_IDS = ("kari", "cerny4", "roman")


def example(name: str) -> tuple:
    """``(dfa, golden table)`` for ``kari``, ``cerny4`` or ``roman``."""
    builders = {"kari": build_kari, "cerny4": lambda: build_cerny(4), "roman": build_roman}
    return builders[name](), golden_table(name)


class ReplayMismatch(NamedTuple):
    line: int
    word: tuple
    expected: str
    got: str


def replay_golden(dfa: Dfa, table: GoldenTable) -> list:
    """Lines whose word does not map the full set onto the recorded image.

    Also checks the bookkeeping of flagged lines: a superset line must
    strictly contain its image, a not-superset line must not contain it,
    an erratum line must differ from it.
    """
    bad = []
    for k, row in enumerate(table.rows, 1):
        got = image_of_all(dfa, row.word)
        if got != row.image:
            bad.append(ReplayMismatch(k, row.word, row.image.to_bits(), got.to_bits()))
        elif row.flag is None and got != row.printed:
            bad.append(ReplayMismatch(k, row.word, row.printed.to_bits(), got.to_bits()))
        elif row.flag == "superset" and not row.image < row.printed:
            bad.append(ReplayMismatch(k, row.word, row.printed.to_bits(), got.to_bits()))
        elif row.flag == "not-superset" and row.image.issubset(row.printed):
            bad.append(ReplayMismatch(k, row.word, row.printed.to_bits(), got.to_bits()))
        elif row.flag == "erratum" and row.image == row.printed:
            bad.append(ReplayMismatch(k, row.word, row.printed.to_bits(), got.to_bits()))
        if row.size is not None and row.size != len(row.chain_vector):
            bad.append(ReplayMismatch(k, row.word, f"|R|={row.size}", f"|R|={len(row.chain_vector)}"))
    return bad


def golden_chain(name: str) -> ChainReport:
    """The L-matrix chain of a transcribed table, using its vectors verbatim."""
    dfa, table = example(name)
    return independent_chain(
        dfa, table.q, table.s, [(r.word, r.chain_vector) for r in table.rows], strict=False
    )


# --- suffix matrices -----------------------------------------------------------

class SuffixRank(NamedTuple):
    suffixes: int
    distinct: int
    rank: int


def right_subword_independence(dfa: Dfa, s) -> SuffixRank:
    """Exact rank of the matrices of the nonempty suffixes of ``s``."""
    s = dfa.check_word(s)
    if len(image_of_all(dfa, s)) != 1:
        raise ValueError("word is not a reset word")
    mats = [matrix_of_word(dfa, s[k:]) for k in range(len(s))]
    distinct = list(dict.fromkeys(mats))
    return SuffixRank(len(mats), len(distinct), rank_of_family(distinct))


# --- census ------------------------------------------------------------------

def _strongly_connected(delta, n) -> bool:
    def reach(adj):
        seen = 1
        stack = [0]
        while stack:
            p = stack.pop()
            for r in adj[p]:
                if not seen >> r & 1:
                    seen |= 1 << r
                    stack.append(r)
        return seen == (1 << n) - 1

    fwd = [[row[p] for row in delta] for p in range(n)]
    back = [[] for _ in range(n)]
    for row in delta:
        for p, r in enumerate(row):
            back[r].append(p)
    return reach(fwd) and reach(back)


def _reset_length(delta, n) -> Optional[int]:
    full = (1 << n) - 1
    if n == 1:
        return 0
    seen = {full}
    frontier = [full]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for mask in frontier:
            for row in delta:
                img = 0
                m = mask
                while m:
                    low = m & -m
                    img |= 1 << row[low.bit_length() - 1]
                    m ^= low
                if img in seen:
                    continue
                if img & (img - 1) == 0:
                    return depth
                seen.add(img)
                nxt.append(img)
        frontier = nxt
    return None


def canonical_form(delta, n) -> tuple:
    """Smallest flattened table over all state and letter relabelings."""
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for p, r in enumerate(perm):
            inv[r] = p
        relabeled = [tuple(perm[row[inv[p]]] for p in range(n)) for row in delta]
        for order in itertools.permutations(relabeled):
            key = tuple(x for row in order for x in row)
            if best is None or key < best:
                best = key
    return best


@dataclass
class CensusReport:
    n: int
    k: int
    tables: int  # transition tables in the full space
    examined: int
    strongly_connected: int = 0
    synchronizing: int = 0
    max_length: int = 0
    histogram: dict = field(default_factory=dict)
    extremal: list = field(default_factory=list)  # canonical forms reaching max_length
    complete: bool = True
    within_cerny: bool = True
    within_frankl: bool = True

    @property
    def cerny_bound(self) -> int:
        return (self.n - 1) ** 2

    @property
    def frankl_bound(self) -> int:
        return (self.n**3 - self.n) // 6

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "tables": self.tables,
            "examined": self.examined,
            "complete": self.complete,
            "strongly_connected": self.strongly_connected,
            "synchronizing": self.synchronizing,
            "max_length": self.max_length,
            "cerny_bound": self.cerny_bound,
            "frankl_bound": self.frankl_bound,
            "within_cerny": self.within_cerny,
            "within_frankl": self.within_frankl,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "extremal_classes": len(self.extremal),
            "extremal": [list(e) for e in self.extremal],
        }


def _census_shard(args):
    n, k, first, limit, require_sc = args
    sc = sync = examined = 0
    hist = {}
    best = -1
    best_tables = []
    rest = k * n - 1
    for tail in itertools.product(range(n), repeat=rest):
        if examined >= limit:
            break
        examined += 1
        flat = (first,) + tail
        delta = [flat[i * n:(i + 1) * n] for i in range(k)]
        if require_sc and not _strongly_connected(delta, n):
            continue
        sc += 1
        length = _reset_length(delta, n)
        if length is None:
            continue
        sync += 1
        hist[length] = hist.get(length, 0) + 1
        if length > best:
            best, best_tables = length, [flat]
        elif length == best:
            best_tables.append(flat)
    return examined, sc, sync, hist, best, best_tables


def audit_small_dfas(
    n: int,
    k: int,
    budget: Optional[int] = None,
    strongly_connected: bool = True,
    dedup: bool = True,
    workers: int = 1,
) -> CensusReport:
    """Exhaustive census of complete ``n``-state, ``k``-letter DFAs.

    Every transition table is visited (no isomorph rejection); the
    filtered class is strongly connected (unless disabled) and
    synchronizing DFAs.  ``budget`` caps the number of tables visited
    (default ``4**8``); when the space is larger the report is marked
    incomplete.  Extremal instances are reported up to simultaneous
    state and letter relabeling when ``dedup`` is set.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if budget is None:
        budget = DEFAULT_CENSUS_BUDGET
    total = n ** (k * n)
    report = CensusReport(n, k, total, 0)
    if total > budget:
        log.warning("census n=%d k=%d: %d tables exceed budget %d; result is partial", n, k, total, budget)
    per_shard = n ** (k * n - 1)
    shards = []
    remaining = budget
    for first in range(n):
        if remaining <= 0:
            break
        take = min(per_shard, remaining)
        shards.append((n, k, first, take, strongly_connected))
        remaining -= take
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_census_shard, shards))
    else:
        results = [_census_shard(s) for s in shards]

    extremal = []
    for examined, sc, sync, hist, best, tables in results:
        report.examined += examined
        report.strongly_connected += sc
        report.synchronizing += sync
        for length, c in hist.items():
            report.histogram[length] = report.histogram.get(length, 0) + c
        if best > report.max_length:
            report.max_length, extremal = best, list(tables)
        elif best == report.max_length and best >= 0:
            extremal.extend(tables)
    report.complete = report.examined == total
    if dedup:
        forms = {canonical_form([t[i * n:(i + 1) * n] for i in range(k)], n) for t in extremal}
        report.extremal = sorted(forms)
    else:
        report.extremal = extremal
    report.within_cerny = report.max_length <= report.cerny_bound
    report.within_frankl = report.max_length <= report.frankl_bound
    return report


def dfa_from_flat(flat, n: int, alphabet=None) -> Dfa:
    k = len(flat) // n
    if alphabet is None:
        alphabet = tuple("abcdefghijklmnopqrstuvwxyz"[:k])
    return Dfa(n, tuple(alphabet), tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(k)))
