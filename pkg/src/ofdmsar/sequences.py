"""Zadoff-Chu subcarrier weight sequences for multi-transmitter OFDM pulses.

The frequency-domain weights are polyphase CAZAC sequences: every subcarrier
weight has unit modulus, the periodic autocorrelation vanishes at all nonzero
lags, and the unitary IDFT is again a constant-modulus sequence.  Additional
transmit channels are phase-ramped copies of the root sequence -- circular
spectral shifts -- which keeps the channels orthogonal in the discrete
frequency domain no matter how the echoes are delayed in time.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .spectral import unitary_idft

__all__ = [
    "ZcParams",
    "WeightSequence",
    "generate_zc",
    "build_weight_set",
    "closed_form_time",
    "periodic_xcorr",
]

_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class ZcParams:
    """Length ``n`` and root index ``mu`` of a Zadoff-Chu sequence.

    The root index must be a positive integer below ``n`` and coprime to it;
    for even ``n`` coprimality forces ``mu`` odd.
    """

    n: int
    mu: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"sequence length must be positive, got N={self.n}")
        if not 0 < self.mu < self.n:
            raise ValueError(
                f"root index must satisfy 0 < mu < N, got mu={self.mu}, N={self.n}"
            )
        if gcd(self.mu, self.n) != 1:
            raise ValueError(f"root index mu={self.mu} must be coprime to N={self.n}")


@dataclass(frozen=True)
class WeightSequence:
    """Frequency-domain subcarrier weights S_m(k) for one transmit channel."""

    values: np.ndarray
    channel_index: int
    params: ZcParams

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        object.__setattr__(self, "values", values)
        if values.shape != (self.params.n,):
            raise ValueError(
                f"weight vector length {values.size} does not match N={self.params.n}"
            )
        if self.channel_index < 1:
            raise ValueError("channel index is 1-based")
        if np.max(np.abs(np.abs(values) - 1.0)) > _MODULUS_TOL:
            raise ValueError("subcarrier weights must have unit modulus")


def generate_zc(params: ZcParams) -> WeightSequence:
    """Generate the root weight sequence, assigned to channel 1.

    Parameters
    ----------
    params : ZcParams
        Sequence length N and root index mu.

    Returns
    -------
    WeightSequence
        values(k) = exp(-j pi mu k (k + (N mod 2)) / N) for k = 0..N-1.
    """
    k = np.arange(params.n, dtype=np.float64)
    phase = -np.pi * params.mu * k * (k + params.n % 2) / params.n
    return WeightSequence(np.exp(1j * phase), 1, params)


def build_weight_set(base: WeightSequence, m_t: int) -> list[WeightSequence]:
    """Expand a channel-1 root sequence into the full transmit weight set.

    Channel m carries the extra phase ramp exp(+j 2 pi (m-1) k / m_t), i.e. a
    circular shift of the base spectrum by (m-1) N / m_t bins.  After matched
    filtering, the m_t recovered channel responses therefore occupy disjoint
    windows of width N / m_t.  For m_t = 2 the ramp reduces to exp(+j pi k).
    """
    if m_t < 1:
        raise ValueError("channel count m_t must be >= 1")
    if base.channel_index != 1:
        raise ValueError("weight set must be built from the channel-1 root sequence")
    if m_t == 1:
        return [base]
    n = base.params.n
    if n % 2 != 0:
        raise ValueError(f"multi-channel weight sets require even N, got N={n}")
    if n % m_t != 0:
        raise ValueError(f"N={n} must be divisible by the channel count m_t={m_t}")
    # even N plus coprimality already forces mu odd; guard anyway
    if base.params.mu % 2 == 0:
        raise ValueError("root index must be odd for an even-length weight set")
    k = np.arange(n)
    return [
        WeightSequence(base.values * np.exp(2j * np.pi * (m - 1) * k / m_t), m, base.params)
        for m in range(1, m_t + 1)
    ]


def closed_form_time(params: ZcParams, weights: WeightSequence) -> np.ndarray:
    """Time-domain waveform of the root sequence via the index-permutation identity.

    For even N the unitary IDFT of a Zadoff-Chu spectrum collapses to

        s(n) = conj(S(mu^-1 * n mod N)) * s(0),   s(0) = N**-0.5 * sum_k S(k),

    where mu^-1 is the modular inverse of mu mod N.  The result is constant
    modulus and equals ``unitary_idft(weights.values)``; odd N is unsupported
    (the identity picks up an extra index-dependent phase there).
    """
    if params.n % 2 != 0:
        raise ValueError("closed-form time-domain waveform requires even N")
    if weights.params != params:
        raise ValueError("params do not match the weight sequence")
    mu_inv = pow(params.mu, -1, params.n)
    s0 = weights.values.sum() / np.sqrt(params.n)
    idx = (mu_inv * np.arange(params.n)) % params.n
    return np.conj(weights.values[idx]) * s0


def periodic_xcorr(a, b, lag: int) -> complex:
    """Periodic cross-correlation sum_k a(k) * conj(b((k + lag) mod N))."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError("sequences must be 1-D and of equal length")
    if not 0 <= lag < a.size:
        raise ValueError(f"lag must lie in [0, N), got {lag}")
    return complex(np.sum(a * np.conj(np.roll(b, -lag))))


def time_domain_waveform(weights: WeightSequence) -> np.ndarray:
    """Unitary IDFT of the weights: the CP-free transmit symbol s_m(n)."""
    return unitary_idft(weights.values)
