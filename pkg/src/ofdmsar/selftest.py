"""Built-in verification suite, runnable via the CLI.

Every check recomputes its expected quantity independently of the code path
it validates: correlations by direct summation, the small-scene echo by the
literal double sum rather than a convolution routine, and the shift identity
from its closed-form phase factor.
"""

from dataclasses import dataclass

import numpy as np

from .reconstruction import recover_subswath, subswath_responses
from .scene import EchoRecord, NoiseSpec, simulate_subswath_echo
from .sequences import ZcParams, build_weight_set, closed_form_time, generate_zc
from .spectral import unitary_idft
from .waveform import synthesize_pulse

__all__ = ["CheckResult", "run_selftest"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, worst: float, tol: float) -> CheckResult:
    return CheckResult(name, worst <= tol, f"worst {worst:.3e} (tol {tol:.1e})")


def check_constant_modulus(n: int, mu: int, m_t: int) -> CheckResult:
    """All channels: unit modulus on every subcarrier and every time sample."""
    weights = build_weight_set(generate_zc(ZcParams(n, mu)), m_t)
    worst = 0.0
    for seq in weights:
        worst = max(worst, float(np.max(np.abs(np.abs(seq.values) - 1.0))))
        symbol = unitary_idft(seq.values)
        worst = max(worst, float(np.max(np.abs(np.abs(symbol) - 1.0))))
    return _result(f"constant modulus (N={n}, mu={mu}, m_t={m_t})", worst, 1e-10)


def check_autocorrelation(n: int, mu: int) -> CheckResult:
    """Periodic autocorrelation vanishes at every nonzero lag (direct sums)."""
    values = generate_zc(ZcParams(n, mu)).values
    worst = 0.0
    for lag in range(1, n):
        worst = max(worst, abs(np.sum(values * np.conj(np.roll(values, -lag)))))
    return _result(f"zero periodic autocorrelation (N={n}, mu={mu})", worst, 1e-9 * n)


def check_orthogonality(n: int, mu: int, m_t: int) -> CheckResult:
    """Cross-channel inner products stay zero under circular time delays."""
    weights = build_weight_set(generate_zc(ZcParams(n, mu)), m_t)
    worst = 0.0
    for tau in (0, 1, n // 4, n - 1):
        ramp = np.exp(-2j * np.pi * np.arange(n) * tau / n)
        shifted = [seq.values * ramp for seq in weights]
        for i in range(m_t):
            for j in range(i + 1, m_t):
                worst = max(worst, abs(np.sum(np.conj(shifted[i]) * shifted[j])))
    return _result(f"delay-robust orthogonality (N={n}, mu={mu}, m_t={m_t})", worst, 1e-9)


def check_shift_identity(values: np.ndarray, n: int, mu: int) -> CheckResult:
    """Half-length circular shift equals a phase ramp times the sequence.

    S((k - N/2) mod N) must equal beta * S(k) * exp(j pi mu k) with
    beta = exp(-j pi mu N / 4).  Takes the raw weight vector so corrupted
    inputs can be screened.
    """
    beta = np.exp(-1j * np.pi * mu * n / 4.0)
    k = np.arange(n)
    expected = beta * values * np.exp(1j * np.pi * mu * k)
    shifted = np.roll(values, n // 2)
    worst = float(np.max(np.abs(shifted - expected)))
    return _result(f"half-shift identity (N={n}, mu={mu})", worst, 1e-10)


def check_closed_form(n: int, mu: int) -> CheckResult:
    """Closed-form time-domain waveform equals the numerical IDFT."""
    params = ZcParams(n, mu)
    seq = generate_zc(params)
    worst = float(np.max(np.abs(closed_form_time(params, seq) - unitary_idft(seq.values))))
    return _result(f"closed-form IDFT (N={n}, mu={mu})", worst, 1e-10)


def direct_echo(local_rcs: np.ndarray, pulses) -> np.ndarray:
    """Literal double-sum echo, independent of any convolution routine."""
    local = np.atleast_2d(np.asarray(local_rcs, dtype=np.complex128))
    m_t, l_p = local.shape
    n, cp_len = pulses[0].n_subcarriers, pulses[0].cp_len
    out = np.zeros(n + l_p + cp_len - 1, dtype=np.complex128)
    for m in range(m_t):
        u = pulses[m].samples
        for idx in range(out.size):
            acc = 0.0 + 0.0j
            for l in range(l_p):
                t = idx - l
                if 0 <= t < u.size:
                    acc += local[m, l] * u[t]
            out[idx] += acc
    return out


def check_brute_force_pipeline(
    n: int = 8, l_p: int = 2, m_t: int = 2, scenes: int = 25, seed: int = 1234
) -> CheckResult:
    """Recovery from directly summed echoes must reproduce every coefficient."""
    weights = build_weight_set(generate_zc(ZcParams(n, 1)), m_t)
    pulses = [synthesize_pulse(w, l_p) for w in weights]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(scenes):
        local = rng.standard_normal((m_t, l_p)) + 1j * rng.standard_normal((m_t, l_p))
        echo = EchoRecord(direct_echo(local, pulses), 1, l_p, l_p, NoiseSpec.noiseless())
        recovered = recover_subswath(echo, weights, l_p)
        for row, prof in zip(local, recovered):
            worst = max(worst, float(np.max(np.abs(prof.values - row))))
    return _result(f"brute-force pipeline (N={n}, L_p={l_p}, {scenes} scenes)", worst, 1e-12)


def _random_subswath(n, l_p, m_t, mu, sigma, seed):
    weights = build_weight_set(generate_zc(ZcParams(n, mu)), m_t)
    pulses = [synthesize_pulse(w, l_p) for w in weights]
    rng = np.random.default_rng(seed)
    local = rng.standard_normal((m_t, l_p)) + 1j * rng.standard_normal((m_t, l_p))
    echo = simulate_subswath_echo(local, pulses, NoiseSpec(sigma, seed + 1), 1)
    return weights, local, echo


def check_support_separation(n: int = 64, l_p: int = 16, seed: int = 99) -> CheckResult:
    """Noiseless gap cells between the channel windows must be numerically zero."""
    weights, _, echo = _random_subswath(n, l_p, 2, 1, 0.0, seed)
    responses = subswath_responses(echo, weights).responses
    gap = np.concatenate(
        [responses[0, l_p : n // 2], responses[0, n // 2 + l_p :]]
    )
    worst = float(np.max(np.abs(gap)))
    return _result(f"support separation (N={n}, L_p={l_p})", worst, 1e-10)


def check_redundancy_identity(n: int = 64, l_p: int = 16, seed: int = 77) -> CheckResult:
    """Channel-2 response equals the half-length circular shift of channel 1, even with noise."""
    weights, _, echo = _random_subswath(n, l_p, 2, 1, 0.5, seed)
    responses = subswath_responses(echo, weights).responses
    worst = float(np.max(np.abs(responses[1] - np.roll(responses[0], -(n // 2)))))
    return _result(f"redundancy identity (N={n}, L_p={l_p}, noisy)", worst, 1e-10)


def run_selftest() -> list[CheckResult]:
    """Execute the whole invariant suite and return one result per check."""
    results = []
    for n, mus in ((16, (1, 3, 5)), (1024, (1,))):
        for mu in mus:
            results.append(check_constant_modulus(n, mu, 2))
            results.append(check_autocorrelation(n, mu))
            results.append(check_orthogonality(n, mu, 2))
            results.append(check_shift_identity(generate_zc(ZcParams(n, mu)).values, n, mu))
            results.append(check_closed_form(n, mu))
    results.append(check_orthogonality(1024, 1, 4))
    results.append(check_brute_force_pipeline())
    results.append(check_support_separation())
    results.append(check_redundancy_identity())
    return results
