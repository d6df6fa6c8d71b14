import csv
import json
import subprocess
import sys

import pytest

from hetura.cli import main, parse_db_range


def test_db_range_parsing():
    assert parse_db_range("13:15:1") == (13.0, 14.0, 15.0)
    assert parse_db_range("17") == (17.0,)
    assert parse_db_range("10:11:0.5") == (10.0, 10.5, 11.0)
    for bad in ("3:1:1", "1:2", "1:2:0"):
        with pytest.raises(ValueError):
            parse_db_range(bad)


def test_baseline_run_writes_csv(tmp_path):
    out = tmp_path / "b.csv"
    code = main(["baseline-ura", "--p1-db", "15:16:1", "--trials", "20", "--seed", "1",
                 "--out", str(out), "--rates", "0.05"])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["p1_db", "rate_or_pue", "value", "stderr", "trials"]
    assert [r["p1_db"] for r in rows] == ["15.0", "16.0"]
    assert all(r["trials"] == "20" for r in rows)


def test_config_file_and_json(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("m1 = 6\nm2 = 3\nalpha = 6\n")
    out = tmp_path / "b.json"
    code = main(["block", "--config", str(cfg), "--p1-db", "20", "--trials", "2",
                 "--seed", "9", "--out", str(out), "--format", "json", "--denoiser", "soft"])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["master_seed"] == 9
    assert doc["config"]["cluster1"]["active_count"] == 6
    assert doc["config"]["denoiser"] == "soft"


def test_invalid_power_ratio_exits_with_two(tmp_path, capsys):
    code = main(["hetura", "--alpha", "1.5", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "P2 > 2·P1 violated" in capsys.readouterr().err


@pytest.mark.parametrize("text", ["m1 = many\n", "bogus = 1\n", "section_length = 40000\n"])
def test_bad_config_file_exits_with_two(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert main(["baseline-ura", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 2


def test_missing_config_file_exits_with_two(tmp_path):
    assert main(["baseline-ura", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "x.csv")]) == 2


def test_console_script_runs(tmp_path):
    out = tmp_path / "c.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "hetura.cli", "baseline-ura", "--p1-db", "30", "--trials", "5",
         "--out", str(out), "--rates", "0.03"],
        capture_output=True, text=True, env={"HETURA_THREADS": "1", "PATH": ""},
    )
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().count("\n") == 2
