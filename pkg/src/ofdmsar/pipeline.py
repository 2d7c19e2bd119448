"""End-to-end scenario drivers: simulate, reconstruct, compare, write artifacts.

CSV and JSON outputs are byte-stable for a fixed config: float fields are
written with shortest round-trip formatting, JSON keys are sorted, and no
timestamps or absolute paths are embedded.
"""

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .baselines import lfm_chirp, simulate_baseline
from .config import (
    BASELINE_STREAM,
    ECHO_STREAM,
    TRIAL_STREAM,
    ScenarioConfig,
    build_scene,
)
from .metrics import MetricReport, noise_floor, peak_sidelobe_db, profile_error
from .reconstruction import (
    RangeProfile,
    ReconstructionReport,
    recover_subswath,
    stitch_swath,
    subswath_responses,
)
from .scene import NoiseSpec, SwathScene, derive_seed, gate_subswath, noise_sigma_from_snr, simulate_subswath_echo
from .sequences import ZcParams, build_weight_set, generate_zc
from .waveform import papr_db, required_cp_len, synthesize_pulse

__all__ = ["RunArtifacts", "run_simulate", "run_compare", "export_waveforms"]

_PROFILE_HEADER = ["cell", "channel", "truth_re", "truth_im", "rec_re", "rec_im", "rec_mag"]
_COMPARE_HEADER = ["cell", "channel", "truth", "proposed", "baseline"]


@dataclass
class RunArtifacts:
    """Everything a pipeline run produced: the report plus the files written."""

    report: ReconstructionReport
    out_dir: Path
    files: dict[str, Path] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    baseline_profiles: np.ndarray | None = None


def build_weights(config: ScenarioConfig):
    base = generate_zc(ZcParams(config.n, config.mu))
    return build_weight_set(base, config.m_t)


def _fmt(value: float) -> str:
    return repr(float(value))


def _reconstruct(config, scene, weights, pulses, sigma, keep_intermediates=False):
    """Simulate every subswath echo and recover the stitched profiles."""
    per_subswath = []
    intermediates = [] if keep_intermediates else None
    for p, l_p in enumerate(scene.partition, start=1):
        local = gate_subswath(scene, p)
        noise = NoiseSpec(sigma, derive_seed(config.seed, ECHO_STREAM, p), config.snr_db)
        echo = simulate_subswath_echo(local, pulses, noise, subswath_index=p)
        per_subswath.append(recover_subswath(echo, weights, l_p))
        if keep_intermediates:
            intermediates.append(subswath_responses(echo, weights))
    return stitch_swath(per_subswath), intermediates


def _noise_floor_estimate(config, weights, pulses, sigma, trials):
    """Zero-scene Monte Carlo: pooled per-cell variance of the recovered noise."""
    m_t = config.m_t

    def one_trial(t: int) -> np.ndarray:
        parts = []
        for p, l_p in enumerate(config.partition, start=1):
            noise = NoiseSpec(sigma, derive_seed(config.seed, TRIAL_STREAM, t, p), config.snr_db)
            echo = simulate_subswath_echo(
                np.zeros((m_t, l_p), dtype=np.complex128), pulses, noise, subswath_index=p
            )
            parts.extend(prof.values for prof in recover_subswath(echo, weights, l_p))
        return np.concatenate(parts)

    with ThreadPoolExecutor(max_workers=min(8, trials)) as pool:
        samples = list(pool.map(one_trial, range(trials)))
    return noise_floor(samples)


def _support_cells(truth_row: np.ndarray) -> np.ndarray:
    return np.flatnonzero(np.abs(truth_row) > 0.0)


def _leakage_db(truth, profiles):
    """Worst off-support level relative to the on-support peak, over channels."""
    levels = []
    for prof in profiles:
        support = _support_cells(truth[prof.channel_index - 1])
        if support.size and support.size < prof.values.size:
            levels.append(peak_sidelobe_db(np.abs(prof.values), support))
    return max(levels) if levels else None


def _peak_amplitude_error(profile_mag: np.ndarray, truth_row: np.ndarray):
    """Worst relative magnitude error at the true scatterer cells."""
    support = _support_cells(truth_row)
    if not support.size:
        return None
    truth_mag = np.abs(truth_row[support])
    return float(np.max(np.abs(profile_mag[support] - truth_mag) / truth_mag))


def _simulate_metrics(truth, profiles, pulses, noise_floor_estimate=None) -> MetricReport:
    errors = [profile_error(prof, truth[prof.channel_index - 1]) for prof in profiles]
    return MetricReport(
        max_abs_error=max(err for err, _ in errors),
        mse=float(np.mean([mse for _, mse in errors])),
        leakage_db=_leakage_db(truth, profiles),
        papr_db=[papr_db(pulse) for pulse in pulses],
        noise_floor_estimate=noise_floor_estimate,
    )


def _write_profiles_csv(path: Path, truth: np.ndarray, profiles) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_PROFILE_HEADER)
        for prof in profiles:
            truth_row = truth[prof.channel_index - 1]
            for cell, (t, r) in enumerate(zip(truth_row, prof.values)):
                writer.writerow(
                    [
                        cell,
                        prof.channel_index,
                        _fmt(t.real),
                        _fmt(t.imag),
                        _fmt(r.real),
                        _fmt(r.imag),
                        _fmt(abs(r)),
                    ]
                )


def _write_compare_csv(path: Path, truth: np.ndarray, profiles, baseline: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_COMPARE_HEADER)
        for prof in profiles:
            channel = prof.channel_index
            truth_mag = np.abs(truth[channel - 1])
            prop_mag = np.abs(prof.values)
            base_mag = baseline[channel - 1]
            for cell in range(truth_mag.size):
                writer.writerow(
                    [
                        cell,
                        channel,
                        _fmt(truth_mag[cell]),
                        _fmt(prop_mag[cell]),
                        _fmt(base_mag[cell]),
                    ]
                )


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _plot_profiles(path: Path, truth: np.ndarray, profiles) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "ofdmsar"
    fig, axes = plt.subplots(
        len(profiles), 1, figsize=(9.0, 2.6 * len(profiles)), sharex=True, squeeze=False
    )
    for ax, prof in zip(axes[:, 0], profiles):
        cells = np.arange(prof.values.size)
        ax.plot(cells, np.abs(truth[prof.channel_index - 1]), "o", mfc="none", ms=5, label="truth")
        ax.plot(cells, np.abs(prof.values), "+", ms=6, label="recovered")
        ax.set_ylabel(f"|h|, channel {prof.channel_index}")
        ax.grid(True, alpha=0.3)
        ax.legend(loc="upper right", fontsize=8)
    axes[-1, 0].set_xlabel("range cell")
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)


def _plot_compare(path: Path, truth: np.ndarray, profiles, baseline: np.ndarray) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "ofdmsar"
    fig, axes = plt.subplots(
        len(profiles), 1, figsize=(9.0, 2.8 * len(profiles)), sharex=True, squeeze=False
    )
    for ax, prof in zip(axes[:, 0], profiles):
        channel = prof.channel_index
        cells = np.arange(prof.values.size)
        ax.plot(cells, np.abs(truth[channel - 1]), "o", mfc="none", ms=5, label="truth")
        ax.plot(cells, np.abs(prof.values), "+", ms=6, label="proposed")
        ax.plot(cells, baseline[channel - 1], "*", ms=5, alpha=0.7, label="chirp baseline")
        ax.set_ylabel(f"|h|, channel {channel}")
        ax.grid(True, alpha=0.3)
        ax.legend(loc="upper right", fontsize=8)
    axes[-1, 0].set_xlabel("range cell")
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)


def _prepare_run(config: ScenarioConfig, noiseless: bool):
    scene, scene_meta = build_scene(config)
    weights = build_weights(config)
    cp_len = required_cp_len(config.partition, config.n, config.m_t)
    pulses = [synthesize_pulse(w, cp_len) for w in weights]
    snr_db = None if noiseless else config.snr_db
    sigma = 0.0 if snr_db is None else noise_sigma_from_snr(scene, snr_db)
    return scene, scene_meta, weights, cp_len, pulses, snr_db, sigma


def run_simulate(
    config: ScenarioConfig,
    out_dir,
    noiseless: bool = False,
    trials: int = 0,
    verbose: bool = False,
) -> RunArtifacts:
    """Full pipeline: weight set, pulses, per-subswath echoes, recovery, metrics.

    Writes ``profiles.csv``, ``metrics.json`` and ``profiles.svg`` to out_dir.
    """
    scene, scene_meta, weights, cp_len, pulses, snr_db, sigma = _prepare_run(config, noiseless)
    profiles, intermediates = _reconstruct(
        config, scene, weights, pulses, sigma, keep_intermediates=verbose
    )
    floor = None
    if trials:
        floor = _noise_floor_estimate(config, weights, pulses, sigma, trials)
    report = ReconstructionReport(
        profiles,
        subswath_responses=intermediates,
        metrics=_simulate_metrics(scene.rcs, profiles, pulses, floor),
    )

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    truth_peak = float(np.max(np.abs(scene.rcs))) if scene.rcs.size else 0.0
    metadata = {
        "config": config.to_dict(),
        "scene": scene_meta,
        "cp_len": cp_len,
        "noise_sigma": sigma,
        "effective_snr_db": snr_db,
        "truth_peak": truth_peak,
        "expected_noise_floor": (sigma**2 / config.n) if floor is not None else None,
        "noise_floor_trials": trials or None,
    }
    files = {
        "profiles_csv": out_dir / "profiles.csv",
        "metrics_json": out_dir / "metrics.json",
        "profiles_svg": out_dir / "profiles.svg",
    }
    _write_profiles_csv(files["profiles_csv"], scene.rcs, profiles)
    _write_json(
        files["metrics_json"],
        {"metrics": report.metrics.to_dict(), "metadata": metadata},
    )
    _plot_profiles(files["profiles_svg"], scene.rcs, profiles)
    return RunArtifacts(report, out_dir, files, metadata)


def run_compare(
    config: ScenarioConfig,
    out_dir,
    noiseless: bool = False,
    trials: int = 0,
    verbose: bool = False,
) -> RunArtifacts:
    """Run the proposed pipeline and the LFM matched-filter baseline on one scene.

    Adds ``compare.csv`` and ``compare.svg`` on top of the simulate artifacts;
    the metrics JSON carries one section per method.  With the baseline
    disabled in the config this reduces to :func:`run_simulate`.
    """
    if not config.baseline:
        return run_simulate(config, out_dir, noiseless=noiseless, trials=trials, verbose=verbose)

    scene, scene_meta, weights, cp_len, pulses, snr_db, sigma = _prepare_run(config, noiseless)
    profiles, intermediates = _reconstruct(
        config, scene, weights, pulses, sigma, keep_intermediates=verbose
    )
    floor = None
    if trials:
        floor = _noise_floor_estimate(config, weights, pulses, sigma, trials)

    waveforms = [
        lfm_chirp(config.n, 1 if m % 2 == 1 else -1, config.baseline_bandwidth)
        for m in range(1, config.m_t + 1)
    ]
    base_noise = NoiseSpec(sigma, derive_seed(config.seed, BASELINE_STREAM), snr_db)
    baseline = simulate_baseline(scene, waveforms, base_noise)

    truth = scene.rcs
    proposed_metrics = _simulate_metrics(truth, profiles, pulses, floor)
    proposed_metrics.peak_sidelobe_db = _leakage_db(truth, profiles)
    peak_errs = [
        _peak_amplitude_error(np.abs(prof.values), truth[prof.channel_index - 1])
        for prof in profiles
    ]
    peak_errs = [err for err in peak_errs if err is not None]
    proposed_peak_err = max(peak_errs) if peak_errs else None

    baseline_psl_levels = []
    baseline_errors = []
    baseline_peak_errs = []
    for channel in range(1, config.m_t + 1):
        truth_row = truth[channel - 1]
        mag = baseline[channel - 1]
        support = _support_cells(truth_row)
        if support.size and support.size < mag.size:
            baseline_psl_levels.append(peak_sidelobe_db(mag, support))
        baseline_errors.append(profile_error(mag.astype(np.complex128), np.abs(truth_row)))
        err = _peak_amplitude_error(mag, truth_row)
        if err is not None:
            baseline_peak_errs.append(err)
    baseline_section = {
        "peak_sidelobe_db": max(baseline_psl_levels) if baseline_psl_levels else None,
        "peak_amplitude_error": max(baseline_peak_errs) if baseline_peak_errs else None,
        "max_abs_error": max(err for err, _ in baseline_errors),
        "mse": float(np.mean([mse for _, mse in baseline_errors])),
        "normalized_bandwidth": config.baseline_bandwidth,
    }

    report = ReconstructionReport(profiles, subswath_responses=intermediates, metrics=proposed_metrics)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metadata = {
        "config": config.to_dict(),
        "scene": scene_meta,
        "cp_len": cp_len,
        "noise_sigma": sigma,
        "effective_snr_db": snr_db,
        "truth_peak": float(np.max(np.abs(truth))) if truth.size else 0.0,
        "expected_noise_floor": (sigma**2 / config.n) if floor is not None else None,
        "noise_floor_trials": trials or None,
    }
    proposed_section = report.metrics.to_dict()
    proposed_section["peak_amplitude_error"] = proposed_peak_err
    files = {
        "profiles_csv": out_dir / "profiles.csv",
        "compare_csv": out_dir / "compare.csv",
        "metrics_json": out_dir / "metrics.json",
        "compare_svg": out_dir / "compare.svg",
    }
    _write_profiles_csv(files["profiles_csv"], truth, profiles)
    _write_compare_csv(files["compare_csv"], truth, profiles, baseline)
    _write_json(
        files["metrics_json"],
        {"proposed": proposed_section, "baseline": baseline_section, "metadata": metadata},
    )
    _plot_compare(files["compare_svg"], truth, profiles, baseline)
    return RunArtifacts(report, out_dir, files, metadata, baseline_profiles=baseline)


def export_waveforms(config: ScenarioConfig, out_dir) -> dict[str, Path]:
    """Write the weight set (k, channel, re, im) and pulses (n, channel, re, im) as CSV."""
    weights = build_weights(config)
    cp_len = required_cp_len(config.partition, config.n, config.m_t)
    pulses = [synthesize_pulse(w, cp_len) for w in weights]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {"weights_csv": out_dir / "weights.csv", "pulses_csv": out_dir / "pulses.csv"}
    with open(files["weights_csv"], "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "channel", "re", "im"])
        for seq in weights:
            for k, value in enumerate(seq.values):
                writer.writerow([k, seq.channel_index, _fmt(value.real), _fmt(value.imag)])
    with open(files["pulses_csv"], "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "channel", "re", "im"])
        for pulse in pulses:
            for n, value in enumerate(pulse.samples):
                writer.writerow([n, pulse.channel_index, _fmt(value.real), _fmt(value.imag)])
    return files
