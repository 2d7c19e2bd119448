"""Scenario configuration: JSON schema, validation, and scene construction.

Config keys mirror the system symbols one-to-one: ``n`` (subcarriers), ``mu``
(root index), ``m_t`` (transmit channels), ``partition`` (subswath lengths),
``snr_db`` (number, or null / "noiseless"), ``seed``.  A scene is given either
explicitly (``scatterers``: per-channel lists of [cell, re, im]) or drawn from
the seed (``n_random_scatterers``).
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .scene import SwathScene, derive_seed
from .sequences import ZcParams
from .waveform import SwathConstraintError, required_cp_len

__all__ = ["ConfigError", "ScenarioConfig", "load_config", "parse_config", "build_scene"]

# derive_seed path tags, fixed so artifacts stay reproducible
SCENE_STREAM = 0
ECHO_STREAM = 1
TRIAL_STREAM = 2
BASELINE_STREAM = 3

_KNOWN_KEYS = {
    "n",
    "mu",
    "m_t",
    "partition",
    "seed",
    "snr_db",
    "scatterers",
    "n_random_scatterers",
    "baseline",
    "baseline_bandwidth",
    "out_dir",
    "notes",
}

_RANDOM_AMP_RANGE = (0.2, 1.0)


class ConfigError(ValueError):
    """A scenario field failed validation; the message names field and constraint."""


@dataclass(frozen=True)
class ScenarioConfig:
    n: int
    mu: int
    m_t: int
    partition: tuple[int, ...]
    seed: int
    snr_db: float | None = None
    scatterers: tuple[tuple[tuple[int, complex], ...], ...] | None = None
    n_random_scatterers: int | None = None
    baseline: bool = False
    baseline_bandwidth: float = 0.8
    out_dir: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def total_cells(self) -> int:
        return sum(self.partition)

    @property
    def noiseless(self) -> bool:
        return self.snr_db is None

    def to_dict(self) -> dict:
        scatterers = None
        if self.scatterers is not None:
            scatterers = [
                [[cell, coeff.real, coeff.imag] for cell, coeff in channel]
                for channel in self.scatterers
            ]
        return {
            "n": self.n,
            "mu": self.mu,
            "m_t": self.m_t,
            "partition": list(self.partition),
            "seed": self.seed,
            "snr_db": self.snr_db,
            "scatterers": scatterers,
            "n_random_scatterers": self.n_random_scatterers,
            "baseline": self.baseline,
            "baseline_bandwidth": self.baseline_bandwidth,
        }


def _require_int(raw: dict, key: str, minimum: int | None = None) -> int:
    if key not in raw:
        raise ConfigError(f"{key}: required field is missing")
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{key}: must be >= {minimum}, got {value}")
    return value


def parse_config(raw: dict, source: str = "<dict>") -> ScenarioConfig:
    """Validate a raw config mapping and return a :class:`ScenarioConfig`."""
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: config root must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    n = _require_int(raw, "n", minimum=2)
    mu = _require_int(raw, "mu", minimum=1)
    try:
        ZcParams(n, mu)
    except ValueError as exc:
        raise ConfigError(f"mu: {exc}") from exc

    m_t = _require_int(raw, "m_t", minimum=1)
    if m_t >= 2 and n % 2 != 0:
        raise ConfigError(f"n: multi-channel operation requires even N, got N={n}")
    if m_t >= 2 and n % m_t != 0:
        raise ConfigError(f"m_t: N={n} must be divisible by m_t={m_t}")

    partition_raw = raw.get("partition")
    if not isinstance(partition_raw, list) or not partition_raw:
        raise ConfigError("partition: expected a non-empty list of subswath lengths")
    if any(isinstance(l, bool) or not isinstance(l, int) or l < 1 for l in partition_raw):
        raise ConfigError("partition: subswath lengths must be positive integers")
    partition = tuple(partition_raw)
    try:
        required_cp_len(partition, n, m_t)
    except SwathConstraintError as exc:
        raise ConfigError(f"partition: {exc}") from exc

    seed = _require_int(raw, "seed", minimum=0)
    if seed >= 2**64:
        raise ConfigError("seed: must fit in 64 bits")

    snr_raw = raw.get("snr_db")
    if snr_raw is None or snr_raw == "noiseless":
        snr_db = None
    elif isinstance(snr_raw, (int, float)) and not isinstance(snr_raw, bool):
        snr_db = float(snr_raw)
    else:
        raise ConfigError(f"snr_db: expected a number, null, or \"noiseless\", got {snr_raw!r}")

    total = sum(partition)
    has_explicit = "scatterers" in raw and raw["scatterers"] is not None
    has_random = "n_random_scatterers" in raw and raw["n_random_scatterers"] is not None
    if has_explicit == has_random:
        raise ConfigError(
            "scatterers: provide exactly one of 'scatterers' or 'n_random_scatterers'"
        )

    scatterers = None
    n_random = None
    if has_explicit:
        rows = raw["scatterers"]
        if not isinstance(rows, list) or len(rows) != m_t:
            raise ConfigError(f"scatterers: expected m_t={m_t} per-channel lists")
        parsed_rows = []
        for idx, channel in enumerate(rows, start=1):
            if not isinstance(channel, list):
                raise ConfigError(f"scatterers: channel {idx} must be a list of [cell, re, im]")
            entries = []
            for item in channel:
                if not (isinstance(item, list) and len(item) == 3):
                    raise ConfigError(
                        f"scatterers: channel {idx} entries must be [cell, re, im] triples"
                    )
                cell, re_part, im_part = item
                if isinstance(cell, bool) or not isinstance(cell, int):
                    raise ConfigError(f"scatterers: channel {idx} cell must be an integer")
                if not 0 <= cell < total:
                    raise ConfigError(
                        f"scatterers: channel {idx} cell {cell} outside swath [0, {total})"
                    )
                entries.append((cell, complex(float(re_part), float(im_part))))
            parsed_rows.append(tuple(entries))
        scatterers = tuple(parsed_rows)
    else:
        n_random = _require_int(raw, "n_random_scatterers", minimum=0)
        if n_random > total:
            raise ConfigError(
                f"n_random_scatterers: {n_random} exceeds the {total}-cell swath"
            )

    baseline = raw.get("baseline", False)
    if not isinstance(baseline, bool):
        raise ConfigError("baseline: expected true or false")
    bandwidth = raw.get("baseline_bandwidth", 0.8)
    if isinstance(bandwidth, bool) or not isinstance(bandwidth, (int, float)):
        raise ConfigError("baseline_bandwidth: expected a number in (0, 1]")
    bandwidth = float(bandwidth)
    if not 0.0 < bandwidth <= 1.0:
        raise ConfigError(f"baseline_bandwidth: must lie in (0, 1], got {bandwidth}")

    out_dir = raw.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError("out_dir: expected a string path")
    notes_raw = raw.get("notes", [])
    if isinstance(notes_raw, str):
        notes_raw = [notes_raw]
    if not isinstance(notes_raw, list) or any(not isinstance(s, str) for s in notes_raw):
        raise ConfigError("notes: expected a list of strings")

    return ScenarioConfig(
        n=n,
        mu=mu,
        m_t=m_t,
        partition=partition,
        seed=seed,
        snr_db=snr_db,
        scatterers=scatterers,
        n_random_scatterers=n_random,
        baseline=baseline,
        baseline_bandwidth=bandwidth,
        out_dir=out_dir,
        notes=tuple(notes_raw),
    )


def load_config(path) -> ScenarioConfig:
    """Load and validate a scenario config from a JSON file."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return parse_config(raw, source=str(path))


def build_scene(config: ScenarioConfig) -> tuple[SwathScene, dict]:
    """Construct the swath scene and a metadata record of how it was generated.

    Random scenes draw, per channel and from the config seed: distinct cells
    uniformly over the swath, amplitudes uniform in [0.2, 1], phases uniform
    in [0, 2 pi).
    """
    total = config.total_cells
    rcs = np.zeros((config.m_t, total), dtype=np.complex128)
    if config.scatterers is not None:
        for row, channel in zip(rcs, config.scatterers):
            for cell, coeff in channel:
                row[cell] += coeff
        meta = {"scatterer_source": "explicit"}
    else:
        count = config.n_random_scatterers or 0
        rng = np.random.default_rng(derive_seed(config.seed, SCENE_STREAM))
        for row in rcs:
            cells = rng.choice(total, size=count, replace=False)
            amplitudes = rng.uniform(*_RANDOM_AMP_RANGE, size=count)
            phases = rng.uniform(0.0, 2.0 * np.pi, size=count)
            row[cells] = amplitudes * np.exp(1j * phases)
        meta = {
            "scatterer_source": "random",
            "count_per_channel": count,
            "amplitude_distribution": f"uniform{list(_RANDOM_AMP_RANGE)}",
            "phase_distribution": "uniform[0, 2pi)",
            "cell_distribution": "distinct cells per channel, uniform over the swath, independent between channels",
        }
    return SwathScene(rcs, config.partition, config.m_t), meta
