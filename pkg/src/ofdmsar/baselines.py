"""Matched-filter chirp baseline: the sidelobe behaviour the OFDM scheme removes.

A representative up/down LFM pair stands in for conventional MIMO chirp
waveforms.  Processing is plain time-domain matched filtering, so closely
spaced scatterers interact through sidelobes and the cross-channel leakage of
the only approximately orthogonal chirps.
"""

from dataclasses import dataclass

import numpy as np

from .scene import NoiseSpec, SwathScene

__all__ = ["ChirpWaveform", "lfm_chirp", "matched_filter_profile", "simulate_baseline"]


@dataclass(frozen=True)
class ChirpWaveform:
    """Unit-modulus linear FM pulse sweeping ``normalized_bandwidth`` of f_s."""

    samples: np.ndarray
    sweep_sign: int
    normalized_bandwidth: float


def lfm_chirp(n_samples: int, sweep_sign: int, normalized_bandwidth: float) -> ChirpWaveform:
    """samples(n) = exp(j * sweep_sign * pi * normalized_bandwidth * n**2 / n_samples)."""
    if n_samples < 2:
        raise ValueError("chirp needs at least 2 samples")
    if sweep_sign not in (1, -1):
        raise ValueError("sweep_sign must be +1 (up) or -1 (down)")
    if not 0.0 < normalized_bandwidth <= 1.0:
        raise ValueError("normalized bandwidth must lie in (0, 1]")
    n = np.arange(n_samples, dtype=np.float64)
    samples = np.exp(1j * sweep_sign * np.pi * normalized_bandwidth * n**2 / n_samples)
    return ChirpWaveform(samples, sweep_sign, normalized_bandwidth)


def matched_filter_profile(echo, waveform: ChirpWaveform) -> np.ndarray:
    """Correlate the echo with the waveform; magnitudes at non-negative lags.

    Normalized by the waveform energy so an isolated unit scatterer produces a
    peak of exactly 1 at its true cell.
    """
    echo = np.asarray(echo, dtype=np.complex128)
    ref = waveform.samples
    if echo.ndim != 1:
        raise ValueError("echo must be a 1-D sample vector")
    if echo.size < ref.size:
        raise ValueError("echo is shorter than the reference waveform")
    corr = np.correlate(echo, ref, mode="full")
    zero_lag = ref.size - 1
    energy = float(np.sum(np.abs(ref) ** 2))
    return np.abs(corr[zero_lag:]) / energy


def simulate_baseline(
    scene: SwathScene,
    waveforms: list[ChirpWaveform],
    noise: NoiseSpec,
) -> np.ndarray:
    """Superposed chirp echo of the whole swath, then per-channel matched filters.

    Returns an (m_t, total_cells) array of magnitude profiles.  No subswath
    gating is applied: the baseline sees the scene the conventional way, with
    all channels overlapping in one received signal.
    """
    if len(waveforms) != scene.m_t:
        raise ValueError(
            f"need one waveform per channel: m_t={scene.m_t}, got {len(waveforms)}"
        )
    n = waveforms[0].samples.size
    if any(w.samples.size != n for w in waveforms):
        raise ValueError("all baseline waveforms must share the same length")
    total = scene.total_cells
    echo = np.zeros(total + n - 1, dtype=np.complex128)
    for taps, waveform in zip(scene.rcs, waveforms):
        echo += np.convolve(taps, waveform.samples)
    if noise.sigma > 0.0:
        rng = np.random.default_rng(noise.seed)
        z = rng.standard_normal((2, echo.size))
        echo += noise.sigma / np.sqrt(2.0) * (z[0] + 1j * z[1])
    return np.stack([matched_filter_profile(echo, w)[:total] for w in waveforms])
