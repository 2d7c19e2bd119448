"""CLI behaviour: subcommands, artifacts, exit codes, reproducibility."""

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from ofdmsar import ZcParams, generate_zc
from ofdmsar.cli import main
from ofdmsar.selftest import check_shift_identity, run_selftest

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def write_config(tmp_path, name="scenario.json", **overrides):
    raw = {
        "n": 256,
        "mu": 1,
        "m_t": 2,
        "partition": [40],
        "n_random_scatterers": 4,
        "snr_db": 0.0,
        "seed": 11,
    }
    raw.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return path


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_simulate_writes_artifacts(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "run"
    assert main(["simulate", "--config", str(config), "--out", str(out)]) == 0
    rows = read_rows(out / "profiles.csv")
    assert rows[0] == ["cell", "channel", "truth_re", "truth_im", "rec_re", "rec_im", "rec_mag"]
    assert len(rows) == 1 + 2 * 40
    payload = json.loads((out / "metrics.json").read_text())
    assert set(payload) == {"metrics", "metadata"}
    assert (out / "profiles.svg").exists()


def test_simulate_noiseless_flag(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "run"
    assert main(["simulate", "--config", str(config), "--out", str(out), "--noiseless"]) == 0
    payload = json.loads((out / "metrics.json").read_text())
    assert payload["metrics"]["max_abs_error"] <= 1e-9 * payload["metadata"]["truth_peak"]
    assert payload["metadata"]["noise_sigma"] == 0.0


def test_simulate_is_reproducible(tmp_path):
    config = write_config(tmp_path)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", "--config", str(config), "--out", str(out_a)]) == 0
    assert main(["simulate", "--config", str(config), "--out", str(out_b)]) == 0
    for name in ("profiles.csv", "metrics.json"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_zero_scatterer_scene_runs_clean(tmp_path):
    config = write_config(tmp_path, scatterers=[[], []], n_random_scatterers=None, snr_db=None)
    out = tmp_path / "run"
    assert main(["simulate", "--config", str(config), "--out", str(out)]) == 0
    rows = read_rows(out / "profiles.csv")[1:]
    assert all(float(row[6]) == 0.0 for row in rows)
    payload = json.loads((out / "metrics.json").read_text())
    assert payload["metrics"]["max_abs_error"] == 0.0
    assert payload["metrics"]["leakage_db"] is None


def test_compare_writes_overlay_and_method_metrics(tmp_path):
    out = tmp_path / "cmp"
    code = main(
        ["compare", "--config", str(CONFIG_DIR / "faint_point_compare.json"), "--out", str(out)]
    )
    assert code == 0
    rows = read_rows(out / "compare.csv")
    assert rows[0] == ["cell", "channel", "truth", "proposed", "baseline"]
    assert len(rows) == 1 + 2 * 200
    payload = json.loads((out / "metrics.json").read_text())
    assert payload["proposed"]["peak_sidelobe_db"] is not None
    assert payload["baseline"]["peak_sidelobe_db"] > -40.0
    assert payload["baseline"]["peak_amplitude_error"] >= 0.01
    assert payload["proposed"]["max_abs_error"] < 1e-9
    assert (out / "compare.svg").exists()


def test_compare_with_baseline_disabled_runs_simulate(tmp_path):
    config = write_config(tmp_path, baseline=False)
    out = tmp_path / "run"
    assert main(["compare", "--config", str(config), "--out", str(out)]) == 0
    assert (out / "profiles.csv").exists()
    assert not (out / "compare.csv").exists()


def test_export_waveforms(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "wf"
    assert main(["export-waveforms", "--config", str(config), "--out", str(out)]) == 0
    weights = read_rows(out / "weights.csv")
    assert weights[0] == ["k", "channel", "re", "im"]
    assert len(weights) == 1 + 2 * 256
    pulses = read_rows(out / "pulses.csv")
    assert pulses[0] == ["n", "channel", "re", "im"]
    assert len(pulses) == 1 + 2 * (256 + 40)


def test_verbose_retains_intermediates(tmp_path, capsys):
    config = write_config(tmp_path)
    out = tmp_path / "run"
    assert main(["simulate", "--config", str(config), "--out", str(out), "--verbose"]) == 0
    assert "subswath 1: peak response" in capsys.readouterr().out


def test_trials_flag_reports_noise_floor(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "run"
    code = main(["simulate", "--config", str(config), "--out", str(out), "--trials", "120"])
    assert code == 0
    payload = json.loads((out / "metrics.json").read_text())
    estimate = payload["metrics"]["noise_floor_estimate"]
    expected = payload["metadata"]["expected_noise_floor"]
    assert estimate is not None
    assert abs(estimate - expected) < 0.1 * expected


def test_selftest_passes():
    assert main(["selftest"]) == 0


def test_selftest_results_all_named():
    results = run_selftest()
    assert all(result.passed for result in results)
    assert len({result.name for result in results}) == len(results)


def test_shift_identity_check_detects_injected_phase_error():
    # mis-built weights (odd-length phase branch applied to even N) must fail
    n, mu = 64, 3
    good = generate_zc(ZcParams(n, mu)).values
    assert check_shift_identity(good, n, mu).passed
    k = np.arange(n)
    corrupted = np.exp(-1j * np.pi * mu * k * (k + 1) / n)
    assert not check_shift_identity(corrupted, n, mu).passed


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["simulate", "--config", str(tmp_path / "none.json")]) == 2
    assert "cannot read config" in capsys.readouterr().err


def test_malformed_config_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{oops")
    assert main(["simulate", "--config", str(path)]) == 2


def test_constraint_violation_exits_1(tmp_path, capsys):
    config = write_config(tmp_path, partition=[129])  # exceeds N / M_T = 128
    assert main(["simulate", "--config", str(config)]) == 1
    assert "N/M_T" in capsys.readouterr().err


def test_bad_root_index_exits_1(tmp_path, capsys):
    config = write_config(tmp_path, mu=2)
    assert main(["simulate", "--config", str(config)]) == 1
    assert "coprime" in capsys.readouterr().err
