"""The scenario runner: parsing, execution, determinism, exit codes."""

import json
import pathlib
import subprocess
import sys

import pytest

from afnd.cli import ScenarioError, main, parse_scenario, render_report, run_scenario

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"

MINIMAL = """
scenario t
degree 6
field p-adic 5
algebra A
  var x 1
end
check norms norm-table A
  element 5 + x
end
"""


def test_parse_minimal():
    sc = parse_scenario(MINIMAL)
    assert sc.name == "t"
    assert sc.degree == 6
    assert "A" in sc.algebras
    assert sc.checks[0].kind == "norm-table"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ScenarioError) as exc:
        parse_scenario("scenario t\nfield p-adic 5\nbogus directive\n")
    assert "line 3" in str(exc.value)
    with pytest.raises(ScenarioError):
        parse_scenario("scenario t\nalgebra A\n  var x 1\nend\n")  # no field
    with pytest.raises(ScenarioError) as exc2:
        parse_scenario(MINIMAL.replace("norm-table A", "norm-table Z"))
    assert "undeclared" in str(exc2.value)


def test_run_scenario_report(tmp_path):
    path = tmp_path / "t.afnd"
    path.write_text(MINIMAL)
    report = run_scenario(str(path))
    assert report["all_passed"]
    assert report["checks"][0]["table"][0]["gauss_norm"] == "1"


def test_degree_override(tmp_path):
    path = tmp_path / "t.afnd"
    path.write_text(MINIMAL)
    assert run_scenario(str(path), degree=9)["degree"] == 9


def test_bundled_unit_disk_all_pass():
    report = run_scenario(str(SCENARIOS / "unit_disk.afnd"))
    assert report["all_passed"]
    verdicts = {c["name"]: c["verdict"] for c in report["checks"]}
    assert verdicts["cover-acyclic"] == "exact"
    assert verdicts["cover-points"] == "covered"


def test_bundled_gap_cover_fails_with_witness():
    report = run_scenario(str(SCENARIOS / "gap_cover.afnd"))
    assert not report["all_passed"]
    check = report["checks"][0]
    assert check["verdict"] == "uncovered"
    assert check["witnesses"] == ["gauss(0±5^-1/2)"]


def test_reports_are_byte_identical():
    for name in ("unit_disk.afnd", "norm_table.afnd", "gap_cover.afnd"):
        a = render_report(run_scenario(str(SCENARIOS / name)))
        b = render_report(run_scenario(str(SCENARIOS / name)))
        assert a == b


def test_main_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.afnd"
    good.write_text(MINIMAL)
    assert main([str(good)]) == 0
    out = capsys.readouterr().out
    json.loads(out)  # the report is valid JSON
    bad = tmp_path / "bad.afnd"
    bad.write_text(MINIMAL + "\ncheck broken hoepi A Z\n")
    assert main([str(bad)]) == 2
    assert main([str(tmp_path / "missing.afnd")]) == 2


def test_main_json_flag(tmp_path):
    good = tmp_path / "good.afnd"
    good.write_text(MINIMAL)
    out = tmp_path / "out.json"
    assert main([str(good), "--json", str(out)]) == 0
    assert json.loads(out.read_text())["all_passed"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "afnd.cli", str(SCENARIOS / "norm_table.afnd")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["scenario"] == "norm-table"
