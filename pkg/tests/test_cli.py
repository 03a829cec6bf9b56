"""Command-line behaviour: formats, determinism, diagnostics, exit codes."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

import menergy.cli as cli
from menergy.cli import ANALYZE_COLUMNS, SWEEP_COLUMNS, main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


# ---------------------------------------------------------------------------
# analyze


def test_analyze_generated_petersen(capsys):
    code, out, err = run_cli(["analyze", "--gen", "petersen"], capsys)
    assert code == 0 and err == ""
    header, rows = parse_csv(out)
    assert tuple(header) == ANALYZE_COLUMNS
    assert len(rows) == 1
    row = dict(zip(header, rows[0]))
    assert row["n"] == "10"
    assert row["m"] == "15"
    assert row["max_degree"] == "3"
    assert row["zagreb"] == "90"
    assert row["quad_count"] == "0"
    assert row["m2"] == "30"
    assert row["m4"] == "150"
    assert float(row["energy"]) == pytest.approx(16.0, rel=1e-9)
    assert float(row["quartic_bound"]) == pytest.approx((30 + 60 * math.sqrt(2)) / 7, rel=1e-9)
    # Regular and quadrilateral-free, so the regular-graph formula agrees.
    assert float(row["van_dam_bound"]) == pytest.approx(float(row["quartic_bound"]), rel=1e-12)
    assert float(row["tightness"]) == pytest.approx(float(row["quartic_bound"]) / 16.0, rel=1e-9)
    assert row["classification"] == "NotTight"
    assert row["connected"] == "true"
    assert row["clamped"] == "false"


def test_analyze_is_byte_identical_between_runs(capsys):
    _, first, _ = run_cli(["analyze", "--gen", "gnp:20:0.8:3"], capsys)
    _, second, _ = run_cli(["analyze", "--gen", "gnp:20:0.8:3"], capsys)
    assert first == second


def test_analyze_json_mirrors_csv(capsys):
    code, out_csv, _ = run_cli(["analyze", "--gen", "heawood"], capsys)
    assert code == 0
    code, out_json, _ = run_cli(["analyze", "--gen", "heawood", "--format", "json"], capsys)
    assert code == 0
    header, rows = parse_csv(out_csv)
    csv_row = dict(zip(header, rows[0]))
    json_rows = json.loads(out_json)
    assert len(json_rows) == 1
    jrow = json_rows[0]
    assert list(jrow.keys()) == list(ANALYZE_COLUMNS)
    for key, jval in jrow.items():
        if isinstance(jval, bool):
            assert csv_row[key] == ("true" if jval else "false")
        elif isinstance(jval, float):
            assert float(csv_row[key]) == pytest.approx(jval, rel=1e-11)
        else:
            assert csv_row[key] == str(jval)


def test_analyze_star_has_no_regular_bound(capsys):
    _, out, _ = run_cli(["analyze", "--gen", "star:4"], capsys)
    header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["van_dam_bound"] == ""
    assert float(row["energy"]) == pytest.approx(4.0, rel=1e-9)


def test_analyze_disconnected_union(capsys):
    _, out, _ = run_cli(["analyze", "--gen", "union:complete:2,complete:2"], capsys)
    header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["connected"] == "false"
    assert row["classification"] == "TightUnclassified"


def test_analyze_graph6_file_multiple_graphs(tmp_path, capsys):
    path = tmp_path / "graphs.g6"
    code, _, _ = run_cli(["generate", "complete:4", "cycle:5", "--out", str(path)], capsys)
    assert code == 0
    code, out, err = run_cli(["analyze", "--in", str(path)], capsys)
    assert code == 0 and err == ""
    _, rows = parse_csv(out)
    assert len(rows) == 2
    assert rows[0][0] == "4" and rows[1][0] == "5"


def test_analyze_edgelist_input(tmp_path, capsys):
    path = tmp_path / "tri.edges"
    path.write_text("n 3\n0 1\n1 2\n0 2\n")
    code, out, err = run_cli(["analyze", "--in", str(path), "--in-format", "edgelist"], capsys)
    assert code == 0 and err == ""
    header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["n"] == "3" and row["m"] == "3"
    assert row["classification"] == "Complete"


def test_analyze_missing_file(capsys):
    code, out, err = run_cli(["analyze", "--in", "/nonexistent/x.g6"], capsys)
    assert code == 1
    assert out == ""
    assert "cannot read" in err


def test_analyze_bad_graph6_line_is_located(tmp_path, capsys):
    path = tmp_path / "bad.g6"
    path.write_text("A_\nA!\n")
    code, out, err = run_cli(["analyze", "--in", str(path)], capsys)
    assert code == 1
    assert "line 2" in err


def test_analyze_bad_edgelist_line_is_located(tmp_path, capsys):
    path = tmp_path / "bad.edges"
    path.write_text("n 3\n0 1\n1 9\n")
    code, out, err = run_cli(["analyze", "--in", str(path), "--in-format", "edgelist"], capsys)
    assert code == 1
    assert "line 3" in err


def test_analyze_out_file(tmp_path, capsys):
    path = tmp_path / "report.csv"
    code, out, _ = run_cli(["analyze", "--gen", "complete:3", "--out", str(path)], capsys)
    assert code == 0
    assert out == ""
    text = path.read_text()
    assert text.startswith("n,m,")
    assert text.endswith("\n")


def test_fail_on_violation_passes_on_sound_reports(capsys):
    code, _, err = run_cli(["analyze", "--gen", "petersen", "--fail-on-violation"], capsys)
    assert code == 0
    assert "violation" not in err


def test_fail_on_violation_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "soundness_ok", lambda report, tol: False)
    code, out, err = run_cli(["analyze", "--gen", "petersen", "--fail-on-violation"], capsys)
    assert code == 2
    assert "1 soundness violation(s)" in err
    # The report is still emitted; the exit code is the alarm.
    assert out.startswith("n,m,")


# ---------------------------------------------------------------------------
# generate


def test_generate_k2_graph6(capsys):
    code, out, err = run_cli(["generate", "complete:2"], capsys)
    assert code == 0 and err == ""
    assert out == "A_\n"


def test_generate_multiple_specs(capsys):
    code, out, _ = run_cli(["generate", "complete:2", "complete:2", "path:3"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0] == lines[1] == "A_"


def test_generate_bad_spec(capsys):
    code, out, err = run_cli(["generate", "tesseract:4"], capsys)
    assert code == 1
    assert out == ""
    assert "tesseract" in err


# ---------------------------------------------------------------------------
# sweep


def test_sweep_table_shape_and_bracketing(capsys):
    code, out, err = run_cli(["sweep", "--gen", "petersen", "--max-degree", "4"], capsys)
    assert code == 0 and err == ""
    header, rows = parse_csv(out)
    assert tuple(header) == SWEEP_COLUMNS
    assert [r[2] for r in rows] == ["2", "4"]
    energy = float(rows[0][-1])
    uppers = [float(r[3]) for r in rows]
    lowers = [float(r[6]) for r in rows]
    assert uppers[1] <= uppers[0] + 1e-12
    assert lowers[1] >= lowers[0] - 1e-12
    for up, lo in zip(uppers, lowers):
        assert lo - 1e-6 <= energy <= up + 1e-6
    assert all(r[0] == "0" and r[1] == "petersen" for r in rows)
    assert all(r[5] == "true" and r[8] == "true" for r in rows)
    # Degree-4 LP agrees with the closed-form column within grid slack.
    assert float(rows[1][3]) == pytest.approx(float(rows[1][9]), rel=1e-4)


def test_sweep_json(capsys):
    code, out, _ = run_cli(
        ["sweep", "--gen", "complete:2", "--max-degree", "2", "--format", "json"], capsys
    )
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 1
    assert rows[0]["degree"] == 2
    assert rows[0]["upper_certified"] is True
    assert rows[0]["lp_upper"] == pytest.approx(2.0, abs=1e-6)
    assert rows[0]["lp_lower"] == pytest.approx(2.0, abs=1e-6)


def test_sweep_rejects_odd_max_degree(capsys):
    code, out, err = run_cli(["sweep", "--gen", "petersen", "--max-degree", "3"], capsys)
    assert code == 1
    assert out == ""
    assert "degree" in err


def test_sweep_edgeless_graph_fails_cleanly(capsys):
    code, out, err = run_cli(["sweep", "--gen", "path:1", "--max-degree", "2"], capsys)
    assert code == 1
    assert "edge" in err


def test_sweep_multiple_graphs_indexed(tmp_path, capsys):
    path = tmp_path / "two.g6"
    run_cli(["generate", "complete:3", "cycle:4", "--out", str(path)], capsys)
    code, out, _ = run_cli(["sweep", "--in", str(path), "--max-degree", "2"], capsys)
    assert code == 0
    _, rows = parse_csv(out)
    assert [(r[0], r[1]) for r in rows] == [("0", "line 1"), ("1", "line 2")]


# ---------------------------------------------------------------------------
# tolerance environment variable


def test_tolerance_scale_rejects_garbage(monkeypatch, capsys):
    monkeypatch.setenv("ME_TOLERANCE_SCALE", "banana")
    code, out, err = run_cli(["analyze", "--gen", "complete:3"], capsys)
    assert code == 1
    assert "ME_TOLERANCE_SCALE" in err


def test_tolerance_scale_rejects_nonpositive(monkeypatch, capsys):
    monkeypatch.setenv("ME_TOLERANCE_SCALE", "-2")
    code, out, err = run_cli(["analyze", "--gen", "complete:3"], capsys)
    assert code == 1
    assert "positive" in err


def test_tolerance_scale_accepted(monkeypatch, capsys):
    monkeypatch.setenv("ME_TOLERANCE_SCALE", "3.5")
    code, out, err = run_cli(["analyze", "--gen", "complete:3"], capsys)
    assert code == 0 and err == ""


def test_tolerance_scale_widens_classification(monkeypatch, capsys):
    # Petersen misses the quartic bound by ~2.5%; a huge tolerance scale
    # reclassifies it as tight (and, failing every pattern, unexplained).
    monkeypatch.setenv("ME_TOLERANCE_SCALE", "1e6")
    with pytest.warns(UserWarning):
        code, out, _ = run_cli(["analyze", "--gen", "petersen"], capsys)
    assert code == 0
    header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["classification"] == "TightUnclassified"


# ---------------------------------------------------------------------------
# console entry point


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "menergy.cli", "generate", "complete:2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "A_\n"
