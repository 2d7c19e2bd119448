"""Swath scenes, ideal subswath gating, and the noisy baseband echo model."""

from dataclasses import dataclass

import numpy as np

from .waveform import OfdmPulse

__all__ = [
    "SwathScene",
    "NoiseSpec",
    "EchoRecord",
    "gate_subswath",
    "noise_sigma_from_snr",
    "simulate_subswath_echo",
    "derive_seed",
]


@dataclass(frozen=True)
class NoiseSpec:
    """Additive circularly-symmetric complex Gaussian noise.

    ``sigma`` is the per-sample standard deviation (total complex variance
    sigma**2, split evenly between real and imaginary parts).  The same seed
    always reproduces the same realization.  ``snr_db`` records how sigma was
    derived, if it was; sigma = 0 means noiseless.
    """

    sigma: float
    seed: int
    snr_db: float | None = None

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("noise standard deviation must be non-negative")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")

    @classmethod
    def noiseless(cls, seed: int = 0) -> "NoiseSpec":
        return cls(0.0, seed, None)


@dataclass
class SwathScene:
    """Per-transmitter complex RCS profiles over the whole swath.

    ``rcs`` has shape (m_t, total_cells) where total_cells = sum(partition);
    ``partition`` lists the subswath lengths [L_1, ..., L_P] in range order.
    """

    rcs: np.ndarray
    partition: tuple[int, ...]
    m_t: int

    def __post_init__(self):
        self.rcs = np.atleast_2d(np.asarray(self.rcs, dtype=np.complex128))
        self.partition = tuple(int(l) for l in self.partition)
        if not self.partition or any(l < 1 for l in self.partition):
            raise ValueError("partition must list positive subswath lengths")
        if self.rcs.shape != (self.m_t, sum(self.partition)):
            raise ValueError(
                f"rcs shape {self.rcs.shape} does not match "
                f"(m_t, sum(partition)) = ({self.m_t}, {sum(self.partition)})"
            )
        if not np.isfinite(self.rcs).all():
            raise ValueError("RCS coefficients must be finite")

    @property
    def total_cells(self) -> int:
        return sum(self.partition)

    @property
    def n_subswaths(self) -> int:
        return len(self.partition)


@dataclass(frozen=True)
class EchoRecord:
    """Received baseband samples of one subswath, length N + L_p + L - 1."""

    samples: np.ndarray
    subswath_index: int
    cp_len: int
    l_p: int
    noise: NoiseSpec

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=np.complex128))


def gate_subswath(scene: SwathScene, p: int) -> np.ndarray:
    """Ideal spatial filter: slice subswath p's cells, re-indexed to 0..L_p-1.

    The gate is exactly 1 inside subswath p and 0 elsewhere, so the output is
    simply the (m_t, L_p) block of the scene starting at sum of the earlier
    subswath lengths.  ``p`` is 1-based.
    """
    if not 1 <= p <= scene.n_subswaths:
        raise ValueError(f"subswath index must lie in [1, {scene.n_subswaths}], got {p}")
    start = sum(scene.partition[: p - 1])
    stop = start + scene.partition[p - 1]
    return scene.rcs[:, start:stop].copy()


def noise_sigma_from_snr(scene: SwathScene, snr_db: float) -> float:
    """Per-sample noise standard deviation for a given SNR.

    SNR is referenced to the power of the strongest scattering point, i.e.
    sigma**2 = max |h_m(l)|**2 / 10**(snr_db / 10).
    """
    peak_power = float(np.max(np.abs(scene.rcs) ** 2))
    if peak_power == 0.0:
        raise ValueError("SNR is undefined for an all-zero scene")
    return float(np.sqrt(peak_power / 10.0 ** (snr_db / 10.0)))


def simulate_subswath_echo(
    local_rcs,
    pulses: list[OfdmPulse],
    noise: NoiseSpec,
    subswath_index: int = 1,
) -> EchoRecord:
    """Superpose the per-channel echoes of one subswath and add receiver noise.

    r_p(n) = sum_m sum_l h_{p,m}(l) u_m(n - l) + v(n) for 0 <= n < N + L_p + L - 1,
    with the pulse u_m zero outside [0, N + L).  ``local_rcs`` is the gated
    (m_t, L_p) block from :func:`gate_subswath`.
    """
    local = np.atleast_2d(np.asarray(local_rcs, dtype=np.complex128))
    m_t, l_p = local.shape
    if len(pulses) != m_t:
        raise ValueError(f"need one pulse per channel: {m_t} RCS rows, {len(pulses)} pulses")
    n, cp_len = pulses[0].n_subcarriers, pulses[0].cp_len
    if any(u.n_subcarriers != n or u.cp_len != cp_len for u in pulses):
        raise ValueError("all pulses must share the same N and CP length")
    out_len = n + l_p + cp_len - 1
    echo = np.zeros(out_len, dtype=np.complex128)
    for taps, pulse in zip(local, pulses):
        echo += np.convolve(taps, pulse.samples)
    if noise.sigma > 0.0:
        rng = np.random.default_rng(noise.seed)
        z = rng.standard_normal((2, out_len))
        echo += noise.sigma / np.sqrt(2.0) * (z[0] + 1j * z[1])
    return EchoRecord(echo, subswath_index, cp_len, l_p, noise)


def derive_seed(master_seed: int, *path: int) -> int:
    """Mix a master seed with integer path components into a child seed.

    Fixed mixing via a seed sequence, so concurrent workers (subswaths,
    Monte Carlo trials) get reproducible, statistically independent streams.
    """
    ss = np.random.SeedSequence([int(master_seed), *[int(p) for p in path]])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
