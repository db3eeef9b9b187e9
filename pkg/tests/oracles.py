"""Independent reference computations used only by the tests."""
from collections import deque
from itertools import product

import sympy


def monoid_reset_length(dfa):
    """Shortest reset length by BFS over whole transformations (not subsets)."""
    start = tuple(range(dfa.n))
    if dfa.n == 1:
        return 0
    seen = {start: 0}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for row in dfa.delta:
            nt = tuple(row[x] for x in t)
            if nt in seen:
                continue
            seen[nt] = seen[t] + 1
            if len(set(nt)) == 1:
                return seen[nt]
            queue.append(nt)
    return None


def brute_force_reset_length(dfa, max_len):
    """Try every word in length order; only for tiny cases."""
    for length in range(max_len + 1):
        for word in product(dfa.alphabet, repeat=length):
            states = set(range(dfa.n))
            for a in word:
                row = dfa.delta[dfa.alphabet.index(a)]
                states = {row[p] for p in states}
            if len(states) == 1:
                return length
    return None


def sympy_rank(matrices):
    """Rank of word matrices (as flattened 0/1 vectors) via sympy."""
    rows = []
    for m in matrices:
        rows.append([1 if m.rows[i] == j else 0 for i in range(m.n) for j in range(m.n)])
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def all_row_maps(n, k):
    """Every n-row word matrix with units in columns 0..k-1."""
    from syncmat.wordmatrix import WordMatrix

    return [WordMatrix(rows) for rows in product(range(k), repeat=n)]
