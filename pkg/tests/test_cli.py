import csv
import io
import json
import math
import shutil
import subprocess
import sys

import pytest

from lzexact.cli import (
    CROSSOVER_COLUMNS,
    EVOLVE_COLUMNS,
    FINAL_COLUMNS,
    ZERO_COLUMNS,
    UsageError,
    main,
    parse_paths,
    parse_values,
)
from lzexact.model import PathSpec
from lzexact.observables import path_c_closed_infidelity


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_values():
    assert parse_values("0.2") == [0.2]
    assert parse_values("0.1, 0.5,1") == [0.1, 0.5, 1.0]
    assert parse_values("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_values("1:100:log:3") == pytest.approx([1.0, 10.0, 100.0])
    assert parse_values("1:3:2,7") == [1.0, 3.0, 7.0]


@pytest.mark.parametrize("text", ["", "a", "1,,2", "1:2", "1:2:0", "1:2:x", "0:1:log:3", "1:2:lin:3", "nan", "inf"])
def test_parse_values_rejects(text):
    with pytest.raises(UsageError):
        parse_values(text)


def test_parse_paths():
    assert parse_paths("a, B,c") == ["A", "B", "C"]
    with pytest.raises(UsageError):
        parse_paths("A,D")


def test_evolve_path_c(capsys):
    code, out, _ = run(capsys, "evolve", "--path", "C", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--samples", "101")
    assert code == 0
    assert out.splitlines()[0].split(",") == EVOLVE_COLUMNS
    data = rows(out)
    assert len(data) == 101
    s = PathSpec("C", 0.2, 0.5, 5)
    for r in data:
        assert abs(float(r["infidelity"]) - path_c_closed_infidelity(s, float(r["t"]))) <= 1e-12
        assert r["solver"] == "analytic"


def test_evolve_oracle_starts_at_zero(capsys):
    code, out, _ = run(capsys, "evolve", "--path", "A", "--x0", "0.05", "--z0", "0.1", "--T", "5", "--solver", "oracle")
    assert code == 0
    first = rows(out)[0]
    assert float(first["t"]) == 0.0 and abs(float(first["infidelity"])) <= 1e-12
    assert first["solver"] == "oracle"


def test_evolve_grid_product(capsys):
    code, out, _ = run(
        capsys, "evolve", "--path", "A,B,C", "--x0", "0.01:1:4", "--z0", "0.1,1.0", "--T", "5", "--samples", "3"
    )
    assert code == 0
    assert len(rows(out)) == 3 * 4 * 2 * 3


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["evolve", "--path", "A,B", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--samples", "21"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    out = tmp_path / "run.csv"
    assert main(argv + ["--out", str(out)]) == 0
    assert out.read_bytes() == first.encode()


def test_json_mirrors_csv(capsys):
    argv = ["final", "--path", "A,C", "--x0", "0.063", "--z0", "0.126", "--T", "100"]
    _, text, _ = run(capsys, *argv)
    _, js, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(js)
    assert [list(d) for d in data] == [FINAL_COLUMNS] * 2
    for c, j in zip(rows(text), data):
        for k in FINAL_COLUMNS:
            if j[k] is None:
                assert c[k] == ""
            elif isinstance(j[k], float):
                assert float(c[k]) == j[k]
            else:
                assert c[k] == str(j[k])


def test_final_columns(capsys):
    code, out, _ = run(capsys, "final", "--path", "A,B", "--x0", "0.063", "--z0", "0.126", "--T", "100")
    assert code == 0
    a, b = rows(out)
    assert float(a["I_LZ"]) == pytest.approx(7.10e-3, abs=5e-6)
    assert float(a["T_minus"]) == pytest.approx(7.9678, abs=1e-4)
    assert float(a["T_plus"]) == pytest.approx(2023.78, abs=1e-2)
    assert float(a["T_c"]) == pytest.approx(182.22, abs=1e-2)
    assert b["I_LZ"] == b["T_minus"] == b["T_c"] == ""


def test_final_diabatic(capsys):
    _, out, _ = run(capsys, "final", "--path", "A,B,C", "--x0", "0.2", "--z0", "0.5", "--T", "1e-6")
    for r in rows(out):
        assert float(r["I_exact"]) == pytest.approx(0.25 / 0.29, abs=1e-6)


def test_final_log_range(capsys):
    _, out, _ = run(capsys, "final", "--path", "A", "--x0", "0.063", "--z0", "0.126", "--T", "1:3000:log:7")
    data = rows(out)
    assert len(data) == 7
    assert float(data[-1]["T"]) == pytest.approx(3000.0)


def test_zeros_examples(capsys):
    _, out, _ = run(capsys, "zeros", "--path", "C", "--x0", "0.2", "--z0", "0.5", "--T", "12")
    assert out.splitlines()[0].split(",") == ZERO_COLUMNS
    assert [int(r["k"]) for r in rows(out)] == [0, 1, 2]
    _, out, _ = run(capsys, "zeros", "--path", "C", "--x0", "0.2", "--z0", "0.5", "--T", "5")
    assert len(rows(out)) == 1
    _, out, _ = run(capsys, "zeros", "--path", "A", "--x0", "0.2", "--z0", "0.5", "--T", "95", "--zero-tol", "1e-4")
    late = [r for r in rows(out) if float(r["t_k"]) > 0.8 * 95]
    assert late and min(float(r["I"]) for r in late) < 1e-4


def test_crossover(capsys):
    code, out, _ = run(capsys, "crossover", "--x0", "0.063", "--z0", "0.126,0.03")
    assert code == 0
    assert out.splitlines()[0].split(",") == CROSSOVER_COLUMNS
    lz_case, closed = rows(out)
    assert float(lz_case["T_c"]) == pytest.approx(182.22, abs=1e-2)
    assert closed["T_minus"] == closed["T_plus"] == closed["T_c"] == ""


def test_validate_small_grid(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["validate", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["passed"] and report["max"]["deviation"] < 1e-8
    assert {c["path"] for c in report["cases"]} == {"A", "B", "C"}
    assert report["max"]["wronskian"] < 1e-8


def test_validate_path_c_only(capsys):
    code, out, _ = run(capsys, "validate", "--path", "C")
    assert code == 0
    assert json.loads(out)["max"]["deviation"] < 1e-9


def test_validate_loose_oracle_fails(capsys):
    code, out, _ = run(capsys, "validate", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--rtol", "1e-3", "--atol", "1e-3")
    assert code == 1
    report = json.loads(out)
    assert not report["passed"] and report["max"]["deviation"] >= 1e-8


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["evolve", "--x0", "0.2", "--z0", "0.5"],
        ["evolve", "--path", "D", "--x0", "0.2", "--z0", "0.5", "--T", "5"],
        ["evolve", "--x0", "0", "--z0", "0.5", "--T", "5"],
        ["evolve", "--x0", "0.2", "--z0", "0.5", "--T", "-5"],
        ["evolve", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--samples", "1"],
        ["evolve", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--rtol", "0.5"],
        ["crossover", "--x0", "-1", "--z0", "1"],
        ["final", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--out", "/nonexistent/dir/out.csv"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_numerical_failure(capsys):
    code, _, err = run(capsys, "final", "--path", "A", "--x0", "0.2", "--z0", "0.5", "--T", "1e7")
    assert code == 3
    assert "numerical failure" in err and "overflow" in err


def test_auto_solver(capsys):
    code, out, _ = run(capsys, "evolve", "--path", "B", "--x0", "0.2", "--z0", "0.5", "--T", "5", "--solver", "auto")
    assert code == 0
    assert {r["solver"] for r in rows(out)} == {"analytic"}


@pytest.mark.skipif(shutil.which("lzexact") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["lzexact", "crossover", "--x0", "0.063", "--z0", "0.126"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert math.isclose(float(rows(proc.stdout)[0]["T_c"]), 182.22, abs_tol=1e-2)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lzexact.cli", "crossover", "--x0", "1", "--z0", "0.5"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and rows(proc.stdout)[0]["T_c"] == ""
