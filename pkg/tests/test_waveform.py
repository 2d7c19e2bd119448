"""Pulse synthesis, CP rule, and PAPR tests."""

import numpy as np
import pytest

from ofdmsar import (
    SwathConstraintError,
    ZcParams,
    build_weight_set,
    generate_zc,
    papr_db,
    required_cp_len,
    synthesize_pulse,
    unitary_idft,
)


def test_dc_only_pulse_is_constant():
    pulse = synthesize_pulse(np.array([2, 0, 0, 0], dtype=complex), 2)
    np.testing.assert_allclose(pulse.samples, np.ones(6), atol=1e-15)
    assert pulse.n_subcarriers == 4 and pulse.cp_len == 2


def test_zero_cp_is_degenerate():
    weights = generate_zc(ZcParams(16, 1))
    pulse = synthesize_pulse(weights, 0)
    np.testing.assert_array_equal(pulse.samples, unitary_idft(weights.values))


def test_cp_is_verbatim_copy_of_tail():
    weights = generate_zc(ZcParams(1024, 1))
    pulse = synthesize_pulse(weights, 200)
    assert pulse.samples.size == 1024 + 200
    # bit-identical: the CP is a copy, not a recomputation
    np.testing.assert_array_equal(pulse.samples[:200], pulse.samples[1024:])


def test_cp_layout_matches_symbol():
    weights = generate_zc(ZcParams(16, 1))
    symbol = unitary_idft(weights.values)
    pulse = synthesize_pulse(weights, 5)
    np.testing.assert_array_equal(pulse.samples[:5], symbol[11:])
    np.testing.assert_array_equal(pulse.samples[5:], symbol)


def test_cp_longer_than_symbol_rejected():
    with pytest.raises(ValueError, match=r"\[0, N\]"):
        synthesize_pulse(generate_zc(ZcParams(16, 1)), 17)
    with pytest.raises(ValueError, match=r"\[0, N\]"):
        synthesize_pulse(generate_zc(ZcParams(16, 1)), -1)


def test_required_cp_len_is_longest_subswath():
    assert required_cp_len([200, 180, 150], 1024, 2) == 200


def test_required_cp_len_minimal():
    assert required_cp_len([1], 4, 2) == 1


def test_required_cp_len_boundary():
    assert required_cp_len([512], 1024, 2) == 512
    with pytest.raises(SwathConstraintError) as excinfo:
        required_cp_len([300, 513], 1024, 2)
    assert excinfo.value.max_range_cells == 513
    assert excinfo.value.limit == 512
    assert "N/M_T" in str(excinfo.value)


def test_required_cp_len_input_validation():
    with pytest.raises(ValueError):
        required_cp_len([], 1024, 2)
    with pytest.raises(ValueError):
        required_cp_len([0, 10], 1024, 2)
    with pytest.raises(ValueError):
        required_cp_len([10], 1024, 0)


@pytest.mark.parametrize("n,mu,m_t", [(16, 1, 2), (1024, 1, 2), (1024, 3, 2), (1024, 1, 4)])
def test_zc_pulses_have_zero_papr(n, mu, m_t):
    for weights in build_weight_set(generate_zc(ZcParams(n, mu)), m_t):
        assert abs(papr_db(synthesize_pulse(weights, n // 8))) < 1e-9


def test_single_tone_papr_is_zero():
    spectrum = np.zeros(16, dtype=complex)
    spectrum[3] = 1.0
    assert abs(papr_db(synthesize_pulse(spectrum, 4))) < 1e-12


def test_two_tone_papr():
    # |e^{j0} + e^{j 2 pi n / 16}|^2 peaks at 4 and averages 2
    spectrum = np.zeros(16, dtype=complex)
    spectrum[0] = spectrum[1] = 1.0
    assert abs(papr_db(synthesize_pulse(spectrum, 0)) - 10 * np.log10(2.0)) < 1e-12


def test_papr_of_zero_pulse_undefined():
    with pytest.raises(ValueError, match="all-zero"):
        papr_db(synthesize_pulse(np.zeros(8, dtype=complex), 2))


@pytest.mark.parametrize("m_t", [1, 2, 4])
def test_symbol_energy_equals_n(m_t):
    n = 1024
    for weights in build_weight_set(generate_zc(ZcParams(n, 1)), m_t):
        pulse = synthesize_pulse(weights, 100)
        energy = np.sum(np.abs(pulse.samples[pulse.cp_len :]) ** 2)
        assert abs(energy - n) < 1e-9 * n
