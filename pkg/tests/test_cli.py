import json

import pytest

from syncmat.automaton import dumps
from syncmat.cli import main
from syncmat.harness import build_cerny, build_kari


@pytest.fixture
def cerny_file(tmp_path):
    p = tmp_path / "cerny4.dfa"
    p.write_text(dumps(build_cerny(4)))
    return str(p)


@pytest.fixture
def kari_file(tmp_path):
    p = tmp_path / "kari.dfa"
    p.write_text(dumps(build_kari()))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys, cerny_file):
    code, out, _ = run(capsys, "--format", "json", "check", cerny_file)
    assert code == 0
    assert json.loads(out) == {"states": 4, "letters": ["a", "b"],
                               "strongly_connected": True, "synchronizing": True}


def test_bad_input_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.dfa"
    p.write_text("dfa 2 1\nletters a\nstate 1: 2\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "incomplete" in err
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.dfa"))
    assert code == 2


def test_sync_word_exact_and_greedy(capsys, cerny_file):
    code, out, _ = run(capsys, "sync-word", cerny_file)
    assert code == 0 and out.split("\t")[:2] == ["baaabaaab", "9"]
    code, out, _ = run(capsys, "sync-word", cerny_file, "--greedy", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["method"] == "greedy" and obj["length"] >= 9


def test_sync_word_not_synchronizing(capsys, tmp_path):
    p = tmp_path / "perm.dfa"
    p.write_text("dfa 2 1\nletters a\nstate 1: 2\nstate 2: 1\n")
    code, _, err = run(capsys, "sync-word", str(p))
    assert code == 2 and "not synchronizing" in err


def test_series(capsys, cerny_file):
    code, out, _ = run(capsys, "series", cerny_file, "--word", "b", "--set", "1000")
    assert code == 0 and out.strip().split("\t") == ["b", "1000", "-1"]
    code, out, _ = run(capsys, "--format", "json", "series", cerny_file, "--word", "baaabaaab", "--set", "2")
    assert json.loads(out)["value"] == 3


@pytest.mark.parametrize("target,rank", [(["kari"], 25), (["roman"], 16), (["cerny", "4"], 9)])
def test_chain_golden(capsys, target, rank):
    code, out, _ = run(capsys, "chain", *target, "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["rank"] == rank and obj["reset_matrix_outside_span"]


def test_chain_derived(capsys):
    code, out, _ = run(capsys, "chain", "cerny", "5")
    assert code == 0
    assert out.splitlines()[-1].startswith("# rank ")
    code, _, err = run(capsys, "chain", "cerny")
    assert code == 2


def test_chain_tsv_layout(capsys):
    code, out, _ = run(capsys, "chain", "cerny", "4")
    first = out.splitlines()[0].split("\t")
    assert first == ["b", "0111", "3", "2", "1"]


def test_solve(capsys, cerny_file):
    code, out, _ = run(capsys, "--format", "json", "solve", cerny_file, "--u", "b")
    obj = json.loads(out)
    assert code == 0
    assert obj["q"] == 2 and obj["column_q"] == "0111" and obj["series"] == 2
    code, out, _ = run(capsys, "solve", cerny_file, "--u", "b")
    assert "row-image:" in out


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "3", "--k", "2", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["max_length"] == 4 and obj["complete"]
    code, out, _ = run(capsys, "census", "--n", "3", "--k", "2", "--budget", "10")
    assert code == 1 and "complete\tFalse" in out


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--n", "4", "--k", "3")
    assert code == 0 and out.splitlines()[-1] == "# rank 9 of 9"
    code, out, _ = run(capsys, "basis", "--n", "3", "--k", "4")
    assert code == 2


def test_props(capsys):
    code, out, _ = run(capsys, "props", "--cases", "50", "--seed", "3", "--format", "json")
    assert code == 0 and set(json.loads(out)) >= {"product", "rank", "minimal-solution"}
    code, out, _ = run(capsys, "--seed", "3", "props", "--cases", "20", "--only", "rank")
    assert code == 0 and out.strip() == "rank\tok"
