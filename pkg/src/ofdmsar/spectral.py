"""Unitary DFT/IDFT pair: the single transform convention shared by all modules.

Both directions carry a 1/sqrt(N) factor, so the transforms preserve energy
and are mutually inverse with no extra scaling at call sites.  Any sequence
length N >= 1 is supported, not just powers of two.
"""

import numpy as np

__all__ = ["unitary_dft", "unitary_idft"]


def _as_vector(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("expected a non-empty 1-D sample vector")
    if not np.isfinite(x).all():
        raise ValueError("samples must be finite (no NaN/Inf)")
    return x


def unitary_dft(x) -> np.ndarray:
    """X(k) = N**-0.5 * sum_n x(n) exp(-j 2 pi n k / N)."""
    return np.fft.fft(_as_vector(x), norm="ortho")


def unitary_idft(x) -> np.ndarray:
    """x(n) = N**-0.5 * sum_k X(k) exp(+j 2 pi n k / N)."""
    return np.fft.ifft(_as_vector(x), norm="ortho")
