"""MIMO-OFDM SAR range reconstruction simulator.

Cyclic-prefix OFDM pulses weighted with cyclically shifted Zadoff-Chu
sequences let several transmitters share one frequency band while each
channel's range profile is recovered from a single pulse with zero
inter-range-cell and inter-channel interference.
"""

from .baselines import ChirpWaveform, lfm_chirp, matched_filter_profile, simulate_baseline
from .config import ConfigError, ScenarioConfig, build_scene, load_config, parse_config
from .metrics import DB_FLOOR, MetricReport, noise_floor, peak_sidelobe_db, profile_error
from .pipeline import RunArtifacts, export_waveforms, run_compare, run_simulate
from .reconstruction import (
    RangeProfile,
    ReconstructionReport,
    SubswathResponses,
    matched_filter_freq,
    recover_subswath,
    stitch_swath,
    strip_cp,
    subswath_responses,
)
from .scene import (
    EchoRecord,
    NoiseSpec,
    SwathScene,
    derive_seed,
    gate_subswath,
    noise_sigma_from_snr,
    simulate_subswath_echo,
)
from .sequences import (
    WeightSequence,
    ZcParams,
    build_weight_set,
    closed_form_time,
    generate_zc,
    periodic_xcorr,
    time_domain_waveform,
)
from .spectral import unitary_dft, unitary_idft
from .waveform import OfdmPulse, SwathConstraintError, papr_db, required_cp_len, synthesize_pulse

__version__ = "0.1.0"

__all__ = [
    "ChirpWaveform",
    "ConfigError",
    "DB_FLOOR",
    "EchoRecord",
    "MetricReport",
    "NoiseSpec",
    "OfdmPulse",
    "RangeProfile",
    "ReconstructionReport",
    "RunArtifacts",
    "ScenarioConfig",
    "SubswathResponses",
    "SwathConstraintError",
    "SwathScene",
    "WeightSequence",
    "ZcParams",
    "build_scene",
    "build_weight_set",
    "closed_form_time",
    "derive_seed",
    "export_waveforms",
    "gate_subswath",
    "generate_zc",
    "lfm_chirp",
    "load_config",
    "matched_filter_freq",
    "matched_filter_profile",
    "noise_floor",
    "noise_sigma_from_snr",
    "papr_db",
    "parse_config",
    "peak_sidelobe_db",
    "periodic_xcorr",
    "profile_error",
    "recover_subswath",
    "required_cp_len",
    "run_compare",
    "run_simulate",
    "simulate_baseline",
    "simulate_subswath_echo",
    "stitch_swath",
    "strip_cp",
    "subswath_responses",
    "synthesize_pulse",
    "time_domain_waveform",
    "unitary_dft",
    "unitary_idft",
]
