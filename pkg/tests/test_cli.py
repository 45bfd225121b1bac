import json
from pathlib import Path

import pytest

from kolab.cli import RunConfig, dumps, main, run_command, strip_wall_time

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_RUNS = {
    "halting_000.json": ["halting", "--x", "000"],
    "oracle_10_exact.json": ["oracle", "--q", "10", "--mode", "exact"],
    "reduce_0010_m20.json": ["reduce", "--x", "0010", "--m", "20", "--seed", "3"],
    "calibrate_pad3.json": ["calibrate", "--max-len", "6", "--pad", "3"],
    "complexity_v_0.json": ["complexity", "--machine", "v", "--x", "0", "--bound", "4"],
}

REPORT_KEYS = {"schema_version", "command", "config", "config_hash", "params_hash", "seed",
               "result", "costs", "scale_note", "wall_time"}


def test_halting_command(capsys):
    code, rep = run_command(["halting", "--x", "000"])
    assert code == 0
    assert capsys.readouterr().out.startswith("true")
    assert rep["result"]["halts"] is True


def test_reduce_writes_json(tmp_path):
    out = tmp_path / "r.json"
    code, _ = run_command(["reduce", "--x", "0000000", "--seed", "1", "--m", "200", "--json", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["result"]["verdict"] == "HALTS"
    assert set(rep) == REPORT_KEYS and rep["schema_version"] == 1


def test_oracle_exact_cost():
    code, rep = run_command(["oracle", "--q", "10", "--mode", "exact"])
    assert code == 0 and rep["costs"]["executions"] <= 2


def test_hex_literal_accepted():
    code, rep = run_command(["halting", "--x", "0:3"])
    assert code == 0 and rep["result"]["halts"]


def test_usage_error_exit_2():
    assert main(["oracle", "--q", "10", "--mode", "bogus"]) == 2
    assert main(["nosuchcommand"]) == 2


def test_precondition_error_exit_1(capsys):
    assert main(["oracle", "--q", "0" * 30, "--mode", "exact"]) == 1
    assert "exact regime" in capsys.readouterr().err
    assert main(["calibrate", "--max-len", "12"]) == 1
    assert main(["halting", "--x", "01a"]) == 1


def test_config_file_and_override(tmp_path):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text("# small run\nm=7\nseed=5\n")
    code, rep = run_command(["reduce", "--x", "000", "--config", str(cfg_path), "--seed", "6"])
    assert code == 0
    assert rep["config"]["m"] == 7 and rep["seed"] == 6


def test_config_rejects_unknown_key(tmp_path):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text("colour=blue\n")
    assert main(["halting", "--x", "000", "--config", str(cfg_path)]) == 1


def test_config_round_trip():
    cfg = RunConfig(m=17, seed=3, pad=3, mode="exact", threshold=0.25)
    text = cfg.serialize()
    assert RunConfig.parse(text) == cfg
    assert RunConfig.parse(text).serialize() == text


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("KOLAB_CACHE_DIR", str(tmp_path))
    code, _ = run_command(["complexity", "--machine", "vopt", "--x", "0", "--bound", "5"])
    assert code == 0
    assert any(p.suffix == ".kcache" for p in tmp_path.iterdir())


def test_collision_experiment_small():
    code, rep = run_command(["experiment", "collision", "--max-n", "2", "--max-k", "2"])
    assert code == 0 and rep["result"]["exact"]


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_reports(name):
    code, rep = run_command(GOLDEN_RUNS[name])
    assert code == 0
    assert set(rep) == REPORT_KEYS
    assert dumps(strip_wall_time(rep)) == (GOLDEN / name).read_text()
