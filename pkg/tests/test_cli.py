import json
import random

import pytest

from dtsize.bench import BenchRow, agreement, format_csv, run_bench
from dtsize.cli import main
from dtsize.generate import random_corpus, random_dataset

from psi_cases import YES


@pytest.fixture
def xor_csv(tmp_path):
    path = tmp_path / "xor.csv"
    assert main(["gen-xor", "--grid", "2", "--out", str(path)]) == 0
    return path


def test_solve_and_verify(xor_csv, tmp_path, capsys):
    tree = tmp_path / "t.json"
    assert main(["solve", str(xor_csv), "--tree-out", str(tree)]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert json.loads(tree.read_text())["dim"] in (1, 2)
    assert main(["verify", str(tree), str(xor_csv)]) == 0
    out = capsys.readouterr().out
    assert "valid=yes" in out and "size=3" in out and "essential=1" in out


@pytest.mark.parametrize("algo", ["dp", "fpt", "oracle"])
def test_solve_algorithms_agree(xor_csv, capsys, algo):
    assert main(["solve", str(xor_csv), "--algo", algo]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_budget_and_dims(xor_csv, capsys):
    assert main(["solve", str(xor_csv), "--max-size", "2"]) == 1
    assert main(["solve", str(xor_csv), "--dims", "1"]) == 1
    assert "none within budget" in capsys.readouterr().out
    assert main(["solve", str(xor_csv), "--red-leaves", "2", "--red-class", "r"]) == 0
    assert main(["solve", str(xor_csv), "--dims", "5"]) == 2


def test_verify_rejects_wrong_tree(xor_csv, tmp_path, capsys):
    tree = tmp_path / "bad.json"
    tree.write_text('{"dim": 1, "thr": "0.5", "le": {"class": "r"}, "gt": {"class": "b"}}')
    assert main(["verify", str(tree), str(xor_csv)]) == 1
    assert "valid=no" in capsys.readouterr().out


def test_bad_inputs(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,red\n1,blue\n")
    assert main(["solve", str(bad)]) == 2
    assert main(["solve", str(tmp_path / "missing.csv")]) == 2
    wide = tmp_path / "wide.csv"
    wide.write_text("0,0,0,0,a\n1,1,1,1,b\n")
    assert main(["solve", str(wide), "--algo", "dp"]) == 2
    assert main(["solve", str(wide), "--algo", "dp", "--force"]) == 0


def test_gen_random_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["gen-random", "--seed", "5", "--count", "4", "--out", str(out)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert len(names) == 4
    assert all((a / n).read_bytes() == (b / n).read_bytes() for n in names)
    assert main(["gen-random", "--seed", "5", "--count", "2"]) == 2


def test_gen_psi(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text(YES["parallel"])
    out, budget = tmp_path / "red.csv", tmp_path / "s.txt"
    assert main(["gen-psi", "--in", str(src), "--out", str(out), "--budget-out", str(budget)]) == 0
    assert budget.read_text().strip() == "8"
    assert len(out.read_text().splitlines()) == 26


def test_bench_reports(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for idx, ds in enumerate(random_corpus(7, 10, dims=(1, 2), max_n=7)):
        (corpus / f"c{idx:02d}.csv").write_text(ds.to_csv())
    report = tmp_path / "r.csv"
    assert main(["bench", str(corpus), "--csv-out", str(report), "--no-timing"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 11
    assert all(line.rstrip().endswith("OK") for line in lines[1:])
    assert len(report.read_text().splitlines()) == 31


def test_bench_timeout(tmp_path):
    path = tmp_path / "wide.csv"
    path.write_text(random_dataset(random.Random(3), 14, 5, 2).to_csv())
    result = run_bench([path], ["dp"], timeout=0.5)
    assert result[0].status == "TIMEOUT" and result[0].size is None


def test_bench_empty_and_missing(tmp_path, capsys):
    assert main(["bench", str(tmp_path)]) == 0
    assert capsys.readouterr().out.strip() == "instance  dp  fpt  oracle  agreement"
    assert main(["bench", str(tmp_path / "nope")]) == 2
    assert main(["bench", str(tmp_path), "--algos", "magic"]) == 2


def test_agreement_rules():
    def row(algo, size, status="OK"):
        return BenchRow("x", algo, size, 0.0, status)

    assert agreement([row("dp", 3), row("fpt", 3), row("oracle", 3)]) == "OK"
    assert agreement([row("dp", 3), row("fpt", 4)]) == "MISMATCH"
    assert agreement([row("dp", 8), row("oracle", None, "NONE")]) == "OK"
    assert agreement([row("dp", 5), row("oracle", None, "NONE")]) == "MISMATCH"
    assert agreement([row("dp", None, "TIMEOUT")]) == "-"
    assert format_csv([row("dp", 3)], timing=False) == "instance,algo,size,millis,status\nx,dp,3,,OK\n"
