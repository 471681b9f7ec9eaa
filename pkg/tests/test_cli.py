import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from cyclic_census.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from cyclic_census.tables import SCENARIO_ENV, scenario_dir


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "C 27 x C 3")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["total"] == 11 and doc["order"] == 81


def test_count_text_and_csv(capsys):
    code, out, _ = run(capsys, "count", "D 7", "--format", "text")
    assert code == EXIT_OK and "9" in out
    code, out, _ = run(capsys, "count", "C 6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) >= 2


def test_count_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("C 6\n# skip\nD 3\n"))
    code, out, _ = run(capsys, "count", "-")
    docs = json.loads(out)
    assert code == EXIT_OK and [d["total"] for d in docs] == [4, 5]


def test_lattice_formats(capsys):
    code, out, _ = run(capsys, "lattice", "Q 8", "--format", "dot")
    assert code == EXIT_OK and out.startswith("digraph") and out.count("->") == 7
    code, out, _ = run(capsys, "lattice", "A4")
    assert code == EXIT_OK and len(json.loads(out)["subgroups"]) == 10
    code, _, err = run(capsys, "lattice", "C 1024")
    assert code == EXIT_USAGE and err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["count", "C"],
    ["count", "SD(7,2,2)"],
    ["count", "C 6", "--format", "dot"],
    ["count", "C 6", "--order-cap", "0"],
    ["count", "C 5000"],
    ["tables", "--id", "T99"],
    ["verify"],
    ["shapes"],
    ["verify", "--registry", "--exhaustive"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err


def test_tables_single(capsys):
    code, out, _ = run(capsys, "tables", "--id", "T1", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0].startswith("c(1),c(7)")
    code, out, _ = run(capsys, "tables", "--id", "tab:pqr3")
    assert code == EXIT_OK and json.loads(out)["solutions"] == [{"p": 7}]


def test_tables_all(capsys):
    code, out, _ = run(capsys, "tables", "--all", "--jobs", "4")
    docs = json.loads(out)
    assert code == EXIT_OK and len(docs) == 33 and all(d["ok"] for d in docs)
    code, out, _ = run(capsys, "tables", "--all", "--format", "csv")
    assert out.count("# T") == 33


def test_tables_unexplained_exits_one(capsys, tmp_path):
    raw = json.loads((scenario_dir() / "T1.json").read_text())
    raw["expected_rows"][0]["printed_t"] = "99"
    (tmp_path / "T1.json").write_text(json.dumps(raw))
    code, _, _ = run(capsys, "tables", "--id", "T1", "--scenario-dir", str(tmp_path))
    assert code == EXIT_FAIL


def test_scenario_env(capsys, tmp_path, monkeypatch):
    shutil.copy(scenario_dir() / "T2.json", tmp_path / "T2.json")
    monkeypatch.setenv(SCENARIO_ENV, str(tmp_path))
    code, out, _ = run(capsys, "tables", "--all")
    assert code == EXIT_OK and [d["id"] for d in json.loads(out)] == ["T2"]


def test_verify_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--theorem", "11")
    assert code == EXIT_OK and json.loads(out)["status"] == "PASS"
    code, out, _ = run(capsys, "verify", "--registry", "--format", "text")
    assert code == EXIT_OK and "PASS" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"name": "Q8 wrong", "spec": "Q 8", "expected": 6}]))
    code, out, _ = run(capsys, "verify", "--registry", "--fixture", str(bad))
    assert code == EXIT_FAIL and "Q8 wrong" in out


def test_verify_full_is_deterministic(capsys):
    first = run(capsys, "verify", "--full", "--jobs", "4")
    second = run(capsys, "verify", "--full", "--jobs", "1")
    assert first[0] == EXIT_OK and first[1] == second[1]


def test_shapes(capsys):
    code, out, _ = run(capsys, "shapes", "--n", "11", "--format", "text")
    assert code == EXIT_OK and out.strip() == "p^k (k<=10), pq, p^2q, p^2q^2, p^3q, p^4q, pqr"
    code, out, _ = run(capsys, "shapes", "--n", "1")
    assert code == EXIT_OK
    code, _, _ = run(capsys, "shapes", "--n", "0")
    assert code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclic_census", "count", "SL23"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["total"] == 13
