"""CP-OFDM transmit pulse synthesis and the swath-geometry CP rule."""

from dataclasses import dataclass

import numpy as np

from .sequences import WeightSequence
from .spectral import unitary_idft

__all__ = ["OfdmPulse", "SwathConstraintError", "synthesize_pulse", "required_cp_len", "papr_db"]


class SwathConstraintError(ValueError):
    """The longest subswath exceeds the N / M_T range-cell budget.

    Carries the offending length and the budget so callers can repartition
    the swath.
    """

    def __init__(self, max_range_cells: int, limit: float):
        self.max_range_cells = max_range_cells
        self.limit = limit
        super().__init__(
            f"max subswath length {max_range_cells} exceeds N/M_T = {limit:g} "
            "(constraint L_o <= N/M_T); repartition the swath"
        )


@dataclass(frozen=True)
class OfdmPulse:
    """One transmit pulse u_m(n): an N-sample OFDM symbol with its CP prepended."""

    samples: np.ndarray
    n_subcarriers: int
    cp_len: int
    channel_index: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        object.__setattr__(self, "samples", samples)
        if samples.size != self.n_subcarriers + self.cp_len:
            raise ValueError("pulse length must equal N + L")


def synthesize_pulse(weights, cp_len: int) -> OfdmPulse:
    """Build the transmit pulse: IDFT the weights, prepend the last cp_len samples.

    ``weights`` may be a :class:`WeightSequence` or any raw spectrum vector.
    The cyclic prefix is a verbatim copy of the symbol tail, so
    samples[n] == samples[n + N] for 0 <= n < cp_len.
    """
    if isinstance(weights, WeightSequence):
        spectrum, channel = weights.values, weights.channel_index
    else:
        spectrum, channel = np.asarray(weights, dtype=np.complex128), 1
    n = spectrum.size
    if not 0 <= cp_len <= n:
        raise ValueError(f"CP length must lie in [0, N], got L={cp_len} with N={n}")
    symbol = unitary_idft(spectrum)
    samples = np.concatenate([symbol[n - cp_len :], symbol]) if cp_len else symbol
    return OfdmPulse(samples, n, cp_len, channel)


def required_cp_len(subswath_lengths, n_subcarriers: int, m_t: int) -> int:
    """CP length for the whole acquisition: the longest subswath, L_o = max_p L_p.

    Raises :class:`SwathConstraintError` when L_o > N / M_T, in which case the
    channel responses could no longer be separated into disjoint windows.
    """
    lengths = [int(l) for l in subswath_lengths]
    if not lengths:
        raise ValueError("at least one subswath is required")
    if any(l < 1 for l in lengths):
        raise ValueError("subswath lengths must be positive")
    if m_t < 1:
        raise ValueError("channel count m_t must be >= 1")
    l_o = max(lengths)
    if l_o * m_t > n_subcarriers:
        raise SwathConstraintError(l_o, n_subcarriers / m_t)
    return l_o


def papr_db(pulse: OfdmPulse) -> float:
    """Peak-to-average power ratio in dB over the N-sample symbol.

    The CP is excluded: it copies symbol samples and cannot change the ratio.
    """
    power = np.abs(pulse.samples[pulse.cp_len :]) ** 2
    mean = power.mean()
    if mean == 0.0:
        raise ValueError("PAPR is undefined for an all-zero pulse")
    return float(10.0 * np.log10(power.max() / mean))
