"""Complete DFAs, state subsets, words and reset-word search.

States are 0-based internally; every text format and every printed
vector uses 1-based state numbers, so state ``0`` here is "state 1"
on screen.  Bit ``j`` of a :class:`StateSet` mask is state ``j``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

MAX_BFS_STATES = 24

Word = tuple  # tuple of letter symbols; the empty tuple is the empty word


class DfaError(ValueError):
    pass


class NotSynchronizing(ValueError):
    pass


@dataclass(frozen=True)
class StateSet:
    n: int
    mask: int

    def __post_init__(self):
        if self.n < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} does not fit {self.n} states")

    @classmethod
    def full(cls, n: int) -> "StateSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def of(cls, n: int, states: Iterable[int]) -> "StateSet":
        mask = 0
        for s in states:
            if not 0 <= s < n:
                raise ValueError(f"state index {s} out of range for n={n}")
            mask |= 1 << s
        return cls(n, mask)

    @classmethod
    def from_bits(cls, bits: str) -> "StateSet":
        """Parse a 0/1 vector such as ``"111110"`` (first char = state 1)."""
        bits = bits.strip()
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a 0/1 vector: {bits!r}")
        return cls.of(len(bits), (j for j, c in enumerate(bits) if c == "1"))

    def to_bits(self) -> str:
        return "".join("1" if self.mask >> j & 1 else "0" for j in range(self.n))

    def members(self) -> tuple:
        return tuple(j for j in range(self.n) if self.mask >> j & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, state):
        return 0 <= state < self.n and bool(self.mask >> state & 1)

    def __iter__(self):
        return iter(self.members())

    def issubset(self, other: "StateSet") -> bool:
        return self.mask & ~other.mask == 0

    def __le__(self, other):
        return self.issubset(other)

    def __lt__(self, other):
        return self.issubset(other) and self.mask != other.mask

    def __str__(self):
        return self.to_bits()


@dataclass(frozen=True)
class Dfa:
    """Complete DFA.  ``delta[k][p]`` is the image of state ``p`` under letter ``alphabet[k]``."""

    n: int
    alphabet: tuple
    delta: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        if self.n < 1:
            raise DfaError("a DFA needs at least one state")
        if not alphabet:
            raise DfaError("empty alphabet")
        if len(set(alphabet)) != len(alphabet):
            dup = next(a for a in alphabet if alphabet.count(a) > 1)
            raise DfaError(f"duplicate letter {dup!r}")
        for a in alphabet:
            if not isinstance(a, str) or not a or any(c.isspace() for c in a):
                raise DfaError(f"bad letter symbol {a!r}")
        if len(self.delta) != len(alphabet):
            raise DfaError("incomplete: transition table does not cover every letter")
        delta = []
        for a, row in zip(alphabet, self.delta):
            row = tuple(row)
            if len(row) != self.n:
                raise DfaError(f"incomplete: letter {a!r} has {len(row)} images for {self.n} states")
            for p, img in enumerate(row):
                if img is None:
                    raise DfaError(f"incomplete: no transition for state {p + 1} on {a!r}")
                if not isinstance(img, int) or not 0 <= img < self.n:
                    raise DfaError(f"state {p + 1} on {a!r} goes to out-of-range state {img!r}")
            delta.append(row)
        object.__setattr__(self, "delta", tuple(delta))
        object.__setattr__(self, "_index", {a: k for k, a in enumerate(alphabet)})

    @classmethod
    def from_rows(cls, n: int, alphabet: Sequence[str], rows: Sequence[Sequence[int]]) -> "Dfa":
        """Build from 1-based per-state rows: ``rows[p][k]`` is the image of state p+1 under letter k."""
        if len(rows) != n:
            raise DfaError(f"incomplete: {len(rows)} state rows for {n} states")
        k = len(alphabet)
        delta = []
        for li in range(k):
            col = []
            for p, row in enumerate(rows):
                if len(row) != k:
                    raise DfaError(f"incomplete: state {p + 1} has {len(row)} images for {k} letters")
                col.append(row[li] - 1 if isinstance(row[li], int) else row[li])
            delta.append(col)
        return cls(n, tuple(alphabet), tuple(delta))

    @classmethod
    def from_maps(cls, n: int, maps: dict) -> "Dfa":
        """Build from ``{letter: {state: image}}`` with 0-based states; a missing pair is an error."""
        delta = []
        for a, m in maps.items():
            delta.append(tuple(m.get(p) for p in range(n)))
        return cls(n, tuple(maps), tuple(delta))

    def letter_index(self, letter) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise DfaError(f"letter {letter!r} not in alphabet {self.alphabet}") from None

    def check_word(self, word) -> Word:
        word = tuple(word)
        for a in word:
            self.letter_index(a)
        return word

    def step(self, state: int, word) -> int:
        for a in word:
            state = self.delta[self.letter_index(a)][state]
        return state

    def rows(self) -> list:
        """1-based per-state rows, the inverse of :meth:`from_rows`."""
        return [[self.delta[k][p] + 1 for k in range(len(self.alphabet))] for p in range(self.n)]


class CheckedDfa(NamedTuple):
    dfa: Dfa
    strongly_connected: bool


def is_strongly_connected(dfa: Dfa) -> bool:
    def reach(adj):
        seen = {0}
        stack = [0]
        while stack:
            p = stack.pop()
            for r in adj[p]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return len(seen) == dfa.n

    fwd = [set() for _ in range(dfa.n)]
    back = [set() for _ in range(dfa.n)]
    for row in dfa.delta:
        for p, r in enumerate(row):
            fwd[p].add(r)
            back[r].add(p)
    return reach(fwd) and reach(back)


def validate(dfa: Dfa) -> CheckedDfa:
    """Return the DFA with its strong-connectivity flag.

    Structural problems are already rejected by :class:`Dfa` itself; a
    graph that is not strongly connected is only flagged.
    """
    return CheckedDfa(dfa, is_strongly_connected(dfa))


# --- subset images ---------------------------------------------------------

def _image_tables(dfa: Dfa) -> list:
    """Per letter, per 8-bit chunk of the mask: lookup table byte -> image mask."""
    tables = []
    nchunks = (dfa.n + 7) // 8
    for row in dfa.delta:
        per_chunk = []
        for c in range(nchunks):
            lut = [0] * 256
            for byte in range(1, 256):
                low = byte & -byte
                bit = low.bit_length() - 1
                p = 8 * c + bit
                lut[byte] = lut[byte & (byte - 1)] | (1 << row[p] if p < dfa.n else 0)
            per_chunk.append(lut)
        tables.append(per_chunk)
    return tables


def _image(tables_for_letter, mask: int) -> int:
    out = 0
    c = 0
    while mask:
        out |= tables_for_letter[c][mask & 0xFF]
        mask >>= 8
        c += 1
    return out


def apply(dfa: Dfa, states: StateSet, word) -> StateSet:
    """Image of ``states`` under ``word``, letter by letter."""
    if states.n != dfa.n:
        raise ValueError(f"state set has length {states.n}, DFA has {dfa.n} states")
    current = set(states.members())
    for a in dfa.check_word(word):
        row = dfa.delta[dfa.letter_index(a)]
        current = {row[p] for p in current}
    return StateSet.of(dfa.n, current)


def image_of_all(dfa: Dfa, word) -> StateSet:
    """The vector c_w: image of the full state set."""
    return apply(dfa, StateSet.full(dfa.n), word)


# --- pair graph ------------------------------------------------------------

def _pair_merge_table(dfa: Dfa) -> dict:
    """For every mergeable unordered pair ``(p, r)``, p < r: ``(letter, successor pair or state)``.

    Backward BFS from the diagonal, so following the recorded letters
    from any pair yields a shortest word sending both states to one.
    """
    pre = [[[] for _ in range(dfa.n)] for _ in dfa.delta]
    for k, row in enumerate(dfa.delta):
        for p, r in enumerate(row):
            pre[k][r].append(p)
    nxt = {}
    queue = deque((x, x) for x in range(dfa.n))
    while queue:
        x, y = queue.popleft()
        for k in range(len(dfa.delta)):
            for p in pre[k][x]:
                for r in pre[k][y]:
                    if p == r:
                        continue
                    key = (p, r) if p < r else (r, p)
                    if key not in nxt:
                        nxt[key] = (k, (x, y))
                        queue.append(key)
    return nxt


def is_synchronizing(dfa: Dfa) -> bool:
    """True iff every pair of states can be merged by some word."""
    return len(_pair_merge_table(dfa)) == dfa.n * (dfa.n - 1) // 2


def _check_bfs_size(dfa: Dfa):
    if dfa.n > MAX_BFS_STATES:
        raise ValueError(
            f"exact subset search is capped at {MAX_BFS_STATES} states (got {dfa.n})"
        )


def shortest_sync_word(dfa: Dfa) -> Optional[Word]:
    """A shortest reset word, or ``None`` if the DFA is not synchronizing.

    Breadth-first over images of the full set; letters are tried in
    alphabet order, so the returned witness is reproducible.
    """
    _check_bfs_size(dfa)
    full = (1 << dfa.n) - 1
    if dfa.n == 1:
        return ()
    tables = _image_tables(dfa)
    parent = {full: None}
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        for k, t in enumerate(tables):
            img = _image(t, mask)
            if img in parent:
                continue
            parent[img] = (mask, k)
            if img & (img - 1) == 0:
                letters = []
                cur = img
                while parent[cur] is not None:
                    prev, kk = parent[cur]
                    letters.append(dfa.alphabet[kk])
                    cur = prev
                return tuple(reversed(letters))
            queue.append(img)
    return None


def shortest_sync_length(dfa: Dfa) -> Optional[int]:
    """Length-only variant of :func:`shortest_sync_word` (no parent bookkeeping)."""
    _check_bfs_size(dfa)
    if dfa.n == 1:
        return 0
    full = (1 << dfa.n) - 1
    tables = _image_tables(dfa)
    seen = {full}
    frontier = [full]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for mask in frontier:
            for t in tables:
                img = _image(t, mask)
                if img in seen:
                    continue
                if img & (img - 1) == 0:
                    return depth
                seen.add(img)
                nxt.append(img)
        frontier = nxt
    return None


def greedy_sync_word(dfa: Dfa) -> Word:
    """Greedy pair-merging reset word (an upper bound on the shortest one)."""
    nxt = _pair_merge_table(dfa)
    if len(nxt) != dfa.n * (dfa.n - 1) // 2:
        raise NotSynchronizing("DFA is not synchronizing")

    def merge_word(pair):
        letters = []
        while pair[0] != pair[1]:
            k, pair = nxt[pair if pair[0] < pair[1] else (pair[1], pair[0])]
            letters.append(k)
        return letters

    dist = {pair: len(merge_word(pair)) for pair in nxt}
    current = set(range(dfa.n))
    word = []
    while len(current) > 1:
        members = sorted(current)
        best = min(
            ((p, r) for i, p in enumerate(members) for r in members[i + 1:]),
            key=lambda pr: dist[pr],
        )
        for k in merge_word(best):
            word.append(dfa.alphabet[k])
            row = dfa.delta[k]
            current = {row[p] for p in current}
    word = tuple(word)
    assert len(image_of_all(dfa, word)) == 1
    return word


def sync_state(dfa: Dfa, word) -> int:
    """The single state a reset word sends everything to."""
    img = image_of_all(dfa, word)
    if len(img) != 1:
        raise NotSynchronizing(f"word {format_word(word)} leaves {len(img)} states")
    return img.members()[0]


def renumber(dfa: Dfa, perm: Sequence[int]) -> Dfa:
    """Relabel states: old state ``p`` becomes ``perm[p]``."""
    if sorted(perm) != list(range(dfa.n)):
        raise ValueError("renumbering must be a permutation of the states")
    delta = []
    for row in dfa.delta:
        new = [0] * dfa.n
        for p, r in enumerate(row):
            new[perm[p]] = perm[r]
        delta.append(tuple(new))
    return Dfa(dfa.n, dfa.alphabet, tuple(delta))


def sink_first(dfa: Dfa, word) -> tuple:
    """Swap the reset target of ``word`` with state 0.  Returns ``(dfa, perm)``."""
    q = sync_state(dfa, word)
    perm = list(range(dfa.n))
    perm[0], perm[q] = q, 0
    return renumber(dfa, perm), perm


# --- words -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|\^\s*(\d+)|([^\s()^=]))")


def parse_word(text: str, alphabet: Optional[Sequence[str]] = None) -> Word:
    """Parse a word.

    Single-character alphabets accept compact power notation such as
    ``ba^2b(ab)^3``; ``-``/empty text is the empty word.  Alphabets with
    longer symbols take whitespace-separated letters.
    """
    text = text.strip()
    if text in ("", "-", "ε"):
        return ()
    if alphabet is not None and any(len(a) != 1 for a in alphabet):
        word = tuple(text.split())
    else:
        word = tuple(_parse_power_notation(text))
    if alphabet is not None:
        bad = [a for a in word if a not in alphabet]
        if bad:
            raise DfaError(f"letter {bad[0]!r} not in alphabet {tuple(alphabet)}")
    return word


def _parse_power_notation(text: str) -> list:
    stack = [[]]
    last = None  # the most recent complete item, for a following exponent
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        pos = m.end()
        opening, closing, power, letter = m.groups()
        if opening:
            stack.append([])
            last = None
        elif closing:
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            group = stack.pop()
            stack[-1].append(group)
            last = group
        elif power is not None:
            if last is None:
                raise ValueError(f"exponent without base in {text!r}")
            stack[-1][-1] = [stack[-1][-1]] * int(power)
            last = None
        else:
            stack[-1].append(letter)
            last = letter
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")

    def flatten(items):
        for it in items:
            if isinstance(it, list):
                yield from flatten(it)
            else:
                yield it

    return list(flatten(stack[0]))


def format_word(word) -> str:
    word = tuple(word)
    if not word:
        return "-"
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return " ".join(word)


# --- text format -----------------------------------------------------------

def dumps(dfa: Dfa) -> str:
    lines = [f"dfa {dfa.n} {len(dfa.alphabet)}", "letters " + " ".join(dfa.alphabet)]
    for p, row in enumerate(dfa.rows()):
        lines.append(f"state {p + 1}: " + " ".join(map(str, row)))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Dfa:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2:
        raise DfaError("expected 'dfa <n> <k>' and 'letters ...' header lines")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "dfa":
        raise DfaError(f"bad header {lines[0]!r}")
    try:
        n, k = int(head[1]), int(head[2])
    except ValueError:
        raise DfaError(f"bad header {lines[0]!r}") from None
    letters = lines[1].split()
    if not letters or letters[0] != "letters":
        raise DfaError(f"bad letters line {lines[1]!r}")
    alphabet = letters[1:]
    if len(alphabet) != k:
        raise DfaError(f"header declares {k} letters, found {len(alphabet)}")
    rows = {}
    for line in lines[2:]:
        m = re.fullmatch(r"state\s+(\d+)\s*:\s*(.*)", line)
        if not m:
            raise DfaError(f"bad state line {line!r}")
        p = int(m.group(1))
        if not 1 <= p <= n:
            raise DfaError(f"out-of-range state {p}")
        if p in rows:
            raise DfaError(f"duplicate line for state {p}")
        images = m.group(2).split()
        if len(images) != k:
            raise DfaError(f"incomplete: state {p} lists {len(images)} images for {k} letters")
        try:
            rows[p] = [int(x) for x in images]
        except ValueError:
            raise DfaError(f"bad image in {line!r}") from None
        for img in rows[p]:
            if not 1 <= img <= n:
                raise DfaError(f"out-of-range state {img} in {line!r}")
    missing = [p for p in range(1, n + 1) if p not in rows]
    if missing:
        raise DfaError(f"incomplete: no line for state {missing[0]}")
    return Dfa.from_rows(n, alphabet, [rows[p] for p in range(1, n + 1)])


def load(path) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
