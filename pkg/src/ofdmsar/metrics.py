"""Reconstruction-quality and waveform metrics."""

from dataclasses import dataclass, field

import numpy as np

__all__ = ["DB_FLOOR", "MetricReport", "profile_error", "peak_sidelobe_db", "noise_floor"]

# reported instead of -inf so serialized metrics stay finite
DB_FLOOR = -300.0


@dataclass
class MetricReport:
    """Scalar summary of one reconstruction run."""

    max_abs_error: float
    mse: float
    leakage_db: float | None
    papr_db: list[float] = field(default_factory=list)
    peak_sidelobe_db: float | None = None
    noise_floor_estimate: float | None = None

    def to_dict(self) -> dict:
        return {
            "max_abs_error": self.max_abs_error,
            "mse": self.mse,
            "leakage_db": self.leakage_db,
            "papr_db": list(self.papr_db),
            "peak_sidelobe_db": self.peak_sidelobe_db,
            "noise_floor_estimate": self.noise_floor_estimate,
        }


def _values(profile) -> np.ndarray:
    return np.asarray(getattr(profile, "values", profile))


def profile_error(recovered, truth) -> tuple[float, float]:
    """(max absolute error, mean squared error) between two complex profiles."""
    rec = _values(recovered).astype(np.complex128)
    ref = _values(truth).astype(np.complex128)
    if rec.shape != ref.shape:
        raise ValueError(f"profile lengths differ: {rec.shape} vs {ref.shape}")
    rec_channel = getattr(recovered, "channel_index", None)
    ref_channel = getattr(truth, "channel_index", None)
    if rec_channel is not None and ref_channel is not None and rec_channel != ref_channel:
        raise ValueError(f"channel mismatch: {rec_channel} vs {ref_channel}")
    delta = np.abs(rec - ref)
    return float(delta.max()), float(np.mean(delta**2))


def peak_sidelobe_db(profile, mainlobe_cells) -> float:
    """20 log10 of (max magnitude outside the mainlobe / max inside it)."""
    mag = np.abs(_values(profile)).astype(np.float64)
    cells = sorted(set(int(c) for c in mainlobe_cells))
    if not cells:
        raise ValueError("mainlobe cell set is empty")
    if not all(0 <= c < mag.size for c in cells):
        raise ValueError("mainlobe cells out of range")
    if not mag.any():
        raise ValueError("peak sidelobe level is undefined for an all-zero profile")
    main_peak = mag[cells].max()
    if main_peak == 0.0:
        raise ValueError("mainlobe peak is zero")
    outside = np.delete(mag, cells)
    if outside.size == 0 or outside.max() == 0.0:
        return DB_FLOOR
    return float(max(20.0 * np.log10(outside.max() / main_peak), DB_FLOOR))


def noise_floor(recovered_zero_scene_profiles) -> float:
    """Pooled per-cell variance of recovered values on a zero scene.

    Each entry is one Monte Carlo trial's recovered complex values; at least
    100 trials are required for a usable estimate.
    """
    trials = [np.asarray(_values(t), dtype=np.complex128).ravel() for t in recovered_zero_scene_profiles]
    if len(trials) < 100:
        raise ValueError(f"need at least 100 Monte Carlo trials, got {len(trials)}")
    pooled = np.concatenate(trials)
    return float(np.mean(np.abs(pooled) ** 2))
