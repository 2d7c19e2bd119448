"""Single-pulse range recovery with zero inter-range-cell interference.

The chain per subswath: strip the cyclic prefix (turning the channel's linear
convolution into a cyclic one), DFT, multiply by the conjugated weights of
each transmit channel, IDFT.  Because the weight set phase-ramps channel m by
exp(+j 2 pi (m-1) k / M_T), channel m's response lands at cells [0, L_p) of
its own matched output while every other channel is circularly shifted into a
disjoint window offset by a multiple of N / M_T.  Slicing the first L_p cells
therefore recovers each channel's profile exactly in the noiseless case: no
leakage between range cells, none between channels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .scene import EchoRecord
from .sequences import WeightSequence
from .spectral import unitary_dft, unitary_idft
from .waveform import SwathConstraintError

if TYPE_CHECKING:
    from .metrics import MetricReport

__all__ = [
    "RangeProfile",
    "SubswathResponses",
    "ReconstructionReport",
    "strip_cp",
    "matched_filter_freq",
    "subswath_responses",
    "recover_subswath",
    "stitch_swath",
]


@dataclass
class RangeProfile:
    """Recovered complex RCS coefficients for one channel.

    ``subswath`` is the 1-based subswath index, or None for a stitched
    whole-swath profile.
    """

    values: np.ndarray
    channel_index: int
    subswath: int | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)


@dataclass
class SubswathResponses:
    """Intermediate quantities of one subswath's recovery, kept for diagnostics."""

    subswath: int
    z_time: np.ndarray  # CP-stripped samples z_p(n), length N
    z_freq: np.ndarray  # Z_p(k), length N
    matched: np.ndarray  # Y_{p,m}(k), shape (m_t, N)
    responses: np.ndarray  # full IDFT outputs before gating, shape (m_t, N)


@dataclass
class ReconstructionReport:
    """Whole-swath recovery result: one profile per channel, plus diagnostics."""

    profiles: list[RangeProfile]
    subswath_responses: list[SubswathResponses] | None = None
    metrics: MetricReport | None = None


def strip_cp(echo: EchoRecord, n_subcarriers: int) -> np.ndarray:
    """Drop the CP: keep the N samples starting at sample L, z_p(n) = r_p(n + L)."""
    cp_len = echo.cp_len
    if echo.samples.size < cp_len + n_subcarriers:
        raise ValueError(
            f"echo of length {echo.samples.size} is too short for L={cp_len}, N={n_subcarriers}"
        )
    return echo.samples[cp_len : cp_len + n_subcarriers].copy()


def matched_filter_freq(z_freq, weights) -> np.ndarray:
    """Frequency-domain matched filter: Y(k) = N**-0.5 * conj(S_m(k)) * Z(k).

    With unit-modulus weights this neither amplifies noise nor needs a
    stabilized inverse; it is simultaneously the zero-forcing equalizer.
    """
    z = np.asarray(z_freq, dtype=np.complex128)
    if isinstance(weights, WeightSequence):
        w = weights.values
    else:
        w = np.asarray(weights, dtype=np.complex128)
        if w.size and np.max(np.abs(np.abs(w) - 1.0)) > 1e-9:
            raise ValueError("matched filter expects unit-modulus weights")
    if z.ndim != 1 or z.shape != w.shape:
        raise ValueError(f"spectrum length {z.shape} does not match weights {w.shape}")
    return np.conj(w) * z / np.sqrt(z.size)


def subswath_responses(echo: EchoRecord, weight_set: Sequence[WeightSequence]) -> SubswathResponses:
    """Run CP removal, DFT, matched filtering and IDFT for every channel."""
    if not weight_set:
        raise ValueError("weight set is empty")
    n = weight_set[0].params.n
    z_time = strip_cp(echo, n)
    z_freq = unitary_dft(z_time)
    matched = np.stack([matched_filter_freq(z_freq, w) for w in weight_set])
    responses = np.stack([unitary_idft(y) for y in matched])
    return SubswathResponses(echo.subswath_index, z_time, z_freq, matched, responses)


def recover_subswath(
    echo: EchoRecord,
    weight_set: Sequence[WeightSequence],
    l_p: int,
) -> list[RangeProfile]:
    """Recover every channel's L_p-cell profile from one subswath echo.

    Requires l_p <= N / M_T; beyond that the circularly shifted channel
    windows overlap and the separation argument collapses.
    """
    m_t = len(weight_set)
    n = weight_set[0].params.n
    if l_p < 1:
        raise ValueError("subswath length must be positive")
    if l_p * m_t > n:
        raise SwathConstraintError(l_p, n / m_t)
    full = subswath_responses(echo, weight_set)
    return [
        RangeProfile(full.responses[i, :l_p].copy(), w.channel_index, echo.subswath_index)
        for i, w in enumerate(weight_set)
    ]


def stitch_swath(subswath_profiles: Sequence[Sequence[RangeProfile]]) -> list[RangeProfile]:
    """Concatenate per-subswath profiles, ordered by p, into whole-swath profiles."""
    groups = [list(group) for group in subswath_profiles]
    if not groups or any(not group for group in groups):
        raise ValueError("every subswath must contribute at least one profile")
    channels = [prof.channel_index for prof in groups[0]]
    for index, group in enumerate(groups, start=1):
        if [prof.channel_index for prof in group] != channels:
            raise ValueError("channel sets differ between subswaths")
        if any(prof.subswath != index for prof in group):
            raise ValueError("subswath profiles must be ordered 1..P with none missing")
    return [
        RangeProfile(
            np.concatenate([group[i].values for group in groups]), channel, None
        )
        for i, channel in enumerate(channels)
    ]
