import logging

import pytest

from syncmat.automaton import format_word, image_of_all, is_synchronizing, shortest_sync_word
from syncmat.harness import (
    GOLDEN_IDS,
    audit_small_dfas,
    build_cerny,
    canonical_form,
    dfa_from_flat,
    example,
    golden_chain,
    golden_table,
    replay_golden,
    right_subword_independence,
)

from oracles import monoid_reset_length


def test_builders_are_valid(kari, roman):
    assert (kari.n, kari.alphabet) == (6, ("a", "b"))
    assert (roman.n, roman.alphabet) == (5, ("a", "b", "c"))
    with pytest.raises(ValueError):
        build_cerny(0)


def test_cerny_family_shape():
    d = build_cerny(5)
    assert d.delta[0] == (1, 2, 3, 4, 0)
    assert d.delta[1] == (1, 1, 2, 3, 4)


@pytest.mark.parametrize("name", GOLDEN_IDS)
def test_golden_replay(name):
    dfa, table = example(name)
    assert replay_golden(dfa, table) == []
    assert table.rows[-1].word == table.s
    assert len(image_of_all(dfa, table.s)) == 1


def test_golden_sizes():
    assert [len(golden_table(x).rows) for x in GOLDEN_IDS] == [25, 9, 16]


def test_golden_flags_kari():
    rows = golden_table("kari").rows
    flags = {k: r.flag for k, r in enumerate(rows, 1) if r.flag}
    assert flags == {7: "superset", 9: "erratum", 13: "not-superset", 16: "superset",
                     20: "superset", 23: "superset"}
    assert rows[8].chain_vector == rows[8].image
    assert rows[12].chain_vector == rows[12].printed


def test_golden_words_are_prefixes():
    off = []
    for x in GOLDEN_IDS:
        t = golden_table(x)
        off += [(x, format_word(r.word)) for r in t.rows if t.s[: len(r.word)] != r.word]
    # the printed Cerny table has one line off the prefix path
    assert off == [("cerny4", "baaba")]


def test_replay_detects_tampering():
    dfa, table = example("cerny4")
    from dataclasses import replace

    rows = list(table.rows)
    rows[2] = replace(rows[2], printed=rows[3].printed, image=rows[3].image)
    bad = replay_golden(dfa, replace(table, rows=tuple(rows)))
    assert [m.line for m in bad] == [3]


@pytest.mark.parametrize("name,n", [("kari", 6), ("cerny4", 4), ("roman", 5)])
def test_golden_chain_rank(name, n):
    report = golden_chain(name)
    assert report.rank == (n - 1) ** 2 == len(report.rows)


def test_kari_chain_solves_except_row_13():
    report = golden_chain("kari")
    assert [k for k, r in enumerate(report.rows, 1) if not r.solves] == [13]


def test_suffix_ranks(kari, kari_s, roman, roman_s, cerny4):
    assert right_subword_independence(cerny4, shortest_sync_word(cerny4)) == (9, 9, 9)
    assert right_subword_independence(roman, roman_s).rank == 12
    r = right_subword_independence(kari, kari_s)
    assert (r.suffixes, r.distinct) == (25, 25)
    with pytest.raises(ValueError):
        right_subword_independence(kari, "b")


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 4), (4, 9)])
def test_census_max_is_cerny(n, expected):
    report = audit_small_dfas(n, 2)
    assert report.complete
    assert report.max_length == expected == report.cerny_bound
    assert report.within_frankl and report.within_cerny
    assert sum(report.histogram.values()) == report.synchronizing


def test_census_extremal_classes_include_cerny():
    report = audit_small_dfas(3, 2)
    cerny = build_cerny(3)
    assert canonical_form(cerny.delta, 3) in report.extremal
    for form in report.extremal:
        d = dfa_from_flat(form, 3)
        assert len(shortest_sync_word(d)) == 4 == monoid_reset_length(d)


def test_census_budget_partial(caplog):
    with caplog.at_level(logging.WARNING):
        report = audit_small_dfas(3, 2, budget=100)
    assert not report.complete and report.examined == 100
    assert "partial" in caplog.text


def test_census_workers_agree():
    a = audit_small_dfas(3, 2)
    b = audit_small_dfas(3, 2, workers=2)
    assert a.as_dict() == b.as_dict()


def test_census_without_connectivity_filter():
    report = audit_small_dfas(2, 2, strongly_connected=False)
    assert report.strongly_connected == report.examined == 16
    brute = sum(is_synchronizing(dfa_from_flat(f, 2)) for f in _flats(2, 2))
    assert report.synchronizing == brute


def _flats(n, k):
    import itertools

    return itertools.product(range(n), repeat=n * k)


def test_canonical_form_is_invariant():
    d = build_cerny(4)
    swapped = (d.delta[1], d.delta[0])
    relabel = [3, 0, 2, 1]
    perm_delta = [[0] * 4 for _ in range(2)]
    for k in range(2):
        for p in range(4):
            perm_delta[k][relabel[p]] = relabel[d.delta[k][p]]
    assert canonical_form(d.delta, 4) == canonical_form(swapped, 4) == canonical_form(perm_delta, 4)


def test_example_unknown_name():
    with pytest.raises(KeyError):
        example("nope")
    assert format_word(golden_table("cerny4").s) == "baaabaaab"
