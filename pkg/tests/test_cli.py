import json
import subprocess
import sys

import pytest

from fhl.cli import main
from fhl.partitions import enumerate_partitions


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_dims_level_one(capsys):
    code, out = run(capsys, "dims", "--family", "witt", "--k", "1", "--max-degree", "10", "--jobs", "1")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 10
    assert {s["dimH"] for r in rows for s in r["slices"]} <= {0, 1, 2}


def test_dims_top_class_of_level_minus_one(capsys):
    _, out = run(capsys, "dims", "--family", "witt", "--k", "-1", "--degree", "0")
    (row,) = json.loads(out)
    assert {s["q"]: s["dimH"] for s in row["slices"]}[3] == 1


def test_dims_loop_level_two(capsys):
    _, out = run(capsys, "dims", "--family", "loop", "--k", "2", "--max-degree", "8", "--jobs", "1")
    for row in json.loads(out):
        for s in row["slices"]:
            assert s["dimH"] == len(enumerate_partitions("main", 2, row["n"], s["q"]))


def test_dims_csv(capsys):
    _, out = run(capsys, "dims", "--k", "1", "--degree", "5", "--format", "csv")
    assert out.splitlines()[0] == "n,q,dimC,dimH"
    assert "5,2,2,1" in out.splitlines()


def test_spectrum_degree_three(capsys):
    _, out = run(capsys, "spectrum", "--k", "1", "--degree", "3")
    (rep,) = json.loads(out)
    assert rep["eigen"] == [{"value": "1", "mult": 2}]


def test_spectrum_level_zero(capsys):
    _, out = run(capsys, "spectrum", "--k", "0", "--degree", "2")
    (rep,) = json.loads(out)
    assert rep["method"] == "closed-form"
    assert rep["eigen"] == [{"value": "4", "mult": 2}]


def test_spectrum_needs_brute_outside_closed_forms(capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--k", "2", "--degree", "3"])
    assert info.value.code == 2
    assert main(["spectrum", "--k", "2", "--degree", "3", "--brute"]) == 0


@pytest.mark.parametrize("family,terms", [
    ("witt", [{"coeff": "1", "indices": [1, 4]}, {"coeff": "-3", "indices": [2, 3]}]),
    ("loop", [{"coeff": "1", "indices": [1, 4]}]),
])
def test_cycles_degree_five(capsys, family, terms):
    code, out = run(capsys, "cycles", "--family", family, "--k", "1", "--dim", "2", "--degree", "5")
    (rec,) = json.loads(out)
    assert code == 0 and rec["chain"]["terms"] == terms
    assert all(rec["flags"].values())


def test_cycles_by_dimension_only(capsys):
    _, out = run(capsys, "cycles", "--k", "1", "--dim", "1", "--jobs", "1")
    assert [r["partition"] for r in json.loads(out)] == [[1], [2]]


def test_verify_suites(capsys):
    code, out = run(capsys, "verify", "--suite", "sylvester", "--k", "1", "--trunc", "60")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(capsys, "verify", "--suite", "basis-counts", "--k", "3", "--max-degree", "25", "--jobs", "1")
    assert code == 0 and json.loads(out)["pass"]


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["dims", "--k", "2", "--max-degree", "9", "--out", str(a), "--jobs", "1"])
    main(["dims", "--k", "2", "--max-degree", "9", "--out", str(b), "--jobs", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_jobs_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FHL_JOBS", "zero")
    with pytest.raises(SystemExit) as info:
        main(["dims", "--k", "1", "--degree", "2"])
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["dims", "--family", "virasoro", "--degree", "2"],
    ["dims", "--k", "1"],
    ["cycles", "--k", "0", "--dim", "1"],
    ["verify", "--suite", "nothing"],
    ["spectrum", "--k", "1", "--degree", "3", "--format", "csv"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fhl", "verify", "--suite", "trace", "--max-degree", "8",
                           "--format", "pretty"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("suite trace: 9 checks, 0 failed")
