"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import itertools
import time

import pytest

from syncmat import properties
from syncmat.automaton import apply, format_word, image_of_all, shortest_sync_word
from syncmat.exactla import Basis, canonical_basis, in_span
from syncmat.harness import (
    GOLDEN_IDS,
    audit_small_dfas,
    build_cerny,
    example,
    golden_chain,
    right_subword_independence,
)
from syncmat.lmatrix import independent_chain
from syncmat.wordmatrix import WordMatrix

SEED = 20240611


@pytest.fixture
def verdict(capsys):
    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return report


def test_criterion_1_exact_reset_lengths(verdict, cerny4, kari, roman):
    got = {"cerny4": len(shortest_sync_word(cerny4)), "kari": len(shortest_sync_word(kari)),
           "roman": len(shortest_sync_word(roman))}
    ok = got == {"cerny4": 9, "kari": 25, "roman": 16}
    slow = []
    for n in range(3, 9):
        t0 = time.perf_counter()
        length = len(shortest_sync_word(build_cerny(n)))
        elapsed = time.perf_counter() - t0
        ok = ok and length == (n - 1) ** 2
        got[f"cerny{n}"] = length
        if elapsed >= 1.0:
            slow.append((n, round(elapsed, 2)))
    ok = ok and not slow
    verdict(1, ok, f"lengths {got}; over 1 s: {slow or 'none'}")


def _stated_vector(row):
    # flagged lines state c_u in parentheses next to the printed c_v
    return row.image if row.flag in ("superset", "not-superset") else row.printed


def test_criterion_2_golden_tables(verdict):
    exact = {}
    misprints = []
    failures = []
    for name in GOLDEN_IDS:
        dfa, table = example(name)
        exact[name] = 0
        for k, row in enumerate(table.rows, 1):
            got = image_of_all(dfa, row.word)
            if row.flag == "erratum":
                # the misprint must be refuted by the table's own next line
                nxt = table.rows[k]
                step = nxt.word[len(row.word):]
                refuted = apply(dfa, row.printed, step) != _stated_vector(nxt)
                consistent = apply(dfa, got, step) == _stated_vector(nxt)
                if refuted and consistent:
                    misprints.append(f"{name} line {k} printed {row.printed.to_bits()} is {got.to_bits()}")
                else:
                    failures.append((name, k))
            elif got == _stated_vector(row):
                exact[name] += 1
            else:
                failures.append((name, k))
    ok = not failures and exact == {"kari": 24, "cerny4": 9, "roman": 16}
    verdict(2, ok, f"bit-exact lines {exact}; misprints {misprints}; mismatches {failures or 'none'}")


def test_criterion_3_chain_dimensions(verdict):
    t0 = time.perf_counter()
    ranks = {name: golden_chain(name).rank for name in GOLDEN_IDS}
    elapsed = time.perf_counter() - t0
    ok = ranks == {"kari": 25, "cerny4": 9, "roman": 16} and elapsed < 5
    verdict(3, ok, f"ranks {ranks} in {elapsed:.2f} s")


def test_criterion_4_span_of_all_word_matrices(verdict):
    t0 = time.perf_counter()
    bad = []
    for n in range(3, 6):
        for k in range(2, n):
            maps = [WordMatrix(r) for r in itertools.product(range(k), repeat=n)]
            full = Basis(n)
            full.extend(maps)
            canon = Basis(n)
            canon.extend(canonical_basis(n, k))
            spans = all(canon.coefficients(m) is not None for m in maps)
            if not (full.dimension == canon.dimension == n * (k - 1) + 1 and spans):
                bad.append((n, k, full.dimension))
    elapsed = time.perf_counter() - t0
    verdict(4, not bad and elapsed < 30, f"mismatches {bad or 'none'} in {elapsed:.2f} s")


def test_criterion_5_reset_matrix_outside_l_span(verdict):
    results = {}
    for name in GOLDEN_IDS:
        dfa, table = example(name)
        for label, report in (
            (name, golden_chain(name)),
            (f"{name}/prefixes", independent_chain(dfa, table.q, table.s)),
        ):
            basis = Basis(dfa.n)
            basis.extend(report.basis_matrices)
            results[label] = in_span(WordMatrix.constant(dfa.n, report.q), basis) is None
    verdict(5, all(results.values()), f"independent of L span: {results}")


def test_criterion_6_property_suites(verdict):
    t0 = time.perf_counter()
    results = properties.run_all(seed=SEED, cases=10_000)
    failed = {name: len(bad) for name, bad in results.items() if bad}
    detail = f"{len(results)} suites x 10000 cases, seed {SEED}, failures {failed or 'none'}"
    verdict(6, not failed and len(results) == 8, f"{detail} in {time.perf_counter() - t0:.1f} s")


def test_criterion_7_census_bounds(verdict):
    out = {}
    ok = True
    for n in (3, 4):
        t0 = time.perf_counter()
        r = audit_small_dfas(n, 2)
        out[n] = (r.max_length, r.examined, round(time.perf_counter() - t0, 1))
        ok = ok and r.complete and r.examined <= 4**8
        ok = ok and r.max_length == (n - 1) ** 2 and r.within_frankl
    verdict(7, ok, "n -> (max reset length, tables visited, seconds): " + str(out))


def test_criterion_8_kari_suffix_independence(verdict):
    dfa, table = example("kari")
    r = right_subword_independence(dfa, table.s)
    verdict(8, r.rank == r.distinct,
            f"{r.distinct} distinct suffix matrices of {format_word(table.s)}, exact rank {r.rank}")
