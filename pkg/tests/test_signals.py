import math

import numpy as np
import pytest

from dmcast.arrays import ArrayConfig, channel_matrix, steering_vector
from dmcast.precoding import nsp_an_projector, null_space_basis
from dmcast.signals import (
    NormFactors,
    PowerProfile,
    complex_normal,
    norm_factors,
    qpsk_demodulate,
    qpsk_modulate,
    random_bits,
    receive,
    scheme_loadings,
    transmit_signal,
)


def test_power_profile_validation():
    with pytest.raises(ValueError):
        PowerProfile(1.0, 0.8, 0.8, 1.0, 1.0)  # split does not sum to one
    with pytest.raises(ValueError):
        PowerProfile(0.0, 1.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        PowerProfile(1.0, 1.0, 0.0, 0.0, 1.0)
    p = PowerProfile.from_snr_db(14.0)
    assert abs(p.beta1 - math.sqrt(0.9)) < 1e-15
    assert abs(p.sigma_d2 - 10 ** (-1.4)) < 1e-15


def test_norm_factors_paper_values(profile14):
    f = norm_factors(profile14, 2, 12)
    assert abs(f.alpha2 - 1.0 / math.sqrt(12.0)) < 1e-15
    assert abs(f.alpha1 - 1.0 / math.sqrt(2.0)) < 1e-15
    single = norm_factors(profile14, 1, 12)
    assert single.alpha1 == 1.0
    # with unit-energy symbols the summed message power is beta1^2 * P_s
    assert abs(f.alpha1 ** 2 * 2 - 1.0) < 1e-15
    with pytest.raises(ValueError):
        NormFactors(0.0, 1.0)


def test_scheme_loadings(profile14, factors14):
    loading = scheme_loadings(profile14, factors14, 12)
    cm = (factors14.alpha1 * profile14.beta1) ** 2 * profile14.total_power
    assert abs(loading.desired_load - profile14.sigma_d2 / cm) < 1e-15
    an = (factors14.alpha2 * profile14.beta2) ** 2 * profile14.total_power * 12
    assert abs(loading.eve_load - profile14.sigma_e2 / an) < 1e-15
    no_an = scheme_loadings(PowerProfile(1.0, 1.0, 0.0, 0.1, 0.1), factors14, 12)
    assert math.isinf(no_an.eve_load)


def test_qpsk_gray_map():
    syms = qpsk_modulate(np.array([0, 0, 0, 1, 1, 1, 1, 0], dtype=np.int8))
    expected = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / math.sqrt(2)
    np.testing.assert_allclose(syms, expected, atol=1e-15)


def test_qpsk_round_trip(rng):
    bits = random_bits(rng, 10_000)
    gain = 0.3 - 1.7j
    recovered = qpsk_demodulate(gain * qpsk_modulate(bits), gain)
    np.testing.assert_array_equal(recovered, bits)


def test_qpsk_unit_energy(rng):
    syms = qpsk_modulate(random_bits(rng, 20_000))
    np.testing.assert_allclose(np.abs(syms) ** 2, np.ones(10_000), atol=1e-15)


def test_qpsk_rejects_odd_bit_count():
    with pytest.raises(ValueError):
        qpsk_modulate(np.array([0, 1, 0], dtype=np.int8))


def test_demod_zero_gain_guesses(rng):
    bits = random_bits(rng, 100_000)
    obs = complex_normal(rng, 50_000)
    guesses = qpsk_demodulate(obs, 0.0, rng=rng)
    ber = np.mean(guesses != bits)
    assert abs(ber - 0.5) < 0.01
    with pytest.raises(ValueError):
        qpsk_demodulate(obs, 0.0)


def test_demod_awgn_matches_q_function():
    rng = np.random.default_rng(321)
    n = 100_000
    for snr_db in (4.0, 8.0):
        gamma = 10 ** (snr_db / 10)
        bits = random_bits(rng, 2 * n)
        y = qpsk_modulate(bits) + complex_normal(rng, n, var=1.0 / gamma)
        ber = np.mean(qpsk_demodulate(y, 1.0 + 0j) != bits)
        expected = 0.5 * math.erfc(math.sqrt(gamma / 2.0))
        sigma = math.sqrt(expected * (1 - expected) / (2 * n))
        assert abs(ber - expected) <= 3 * sigma


def test_transmit_pure_message_when_no_an_power(rng):
    cfg = ArrayConfig(8, 0.5)
    profile = PowerProfile(2.0, 1.0, 0.0, 0.1, 0.1)
    factors = norm_factors(profile, 1, 7)
    h = steering_vector(40.0, cfg)
    T = nsp_an_projector(h.reshape(-1, 1))
    x = qpsk_modulate(random_bits(rng, 2))
    z = complex_normal(rng, 7)
    s = transmit_signal([h], x, T, z, profile, factors)
    np.testing.assert_allclose(s, profile.beta1 * math.sqrt(2.0) * h * x[0], atol=1e-12)
    # per-symbol message power is exact for the unit-modulus constellation
    assert abs(np.linalg.norm(s) ** 2 - profile.beta1 ** 2 * 2.0) < 1e-12


def test_transmit_power_conservation(designs14, profile14, factors14, rng):
    design = designs14["leakage"]
    n = 100_000
    bits = random_bits(rng, 2 * 2 * n).reshape(2, -1)
    x = np.vstack([qpsk_modulate(bits[k]) for k in range(2)])
    z = complex_normal(rng, (12, n), var=profile14.sigma_z2)
    amp = math.sqrt(profile14.total_power)
    beams = np.column_stack(design.vectors)
    s = factors14.alpha1 * profile14.beta1 * amp * (beams @ x)
    s += factors14.alpha2 * profile14.beta2 * amp * (design.an_projector @ z)
    mean_power = np.mean(np.linalg.norm(s, axis=0) ** 2)
    assert abs(mean_power - profile14.total_power) < 0.01 * profile14.total_power


def test_transmit_dimension_checks(designs14, profile14, factors14, rng):
    design = designs14["max-grp-nsp"]
    x = qpsk_modulate(random_bits(rng, 4))
    z = complex_normal(rng, 12)
    with pytest.raises(ValueError):
        transmit_signal(design.vectors, x[:1], design.an_projector, z, profile14, factors14)
    with pytest.raises(ValueError):
        transmit_signal(design.vectors, x, design.an_projector, z[:5], profile14, factors14)


def test_receive_noise_only(rng):
    cfg = ArrayConfig(8, 0.5)
    H = channel_matrix([30.0, 60.0], cfg)
    n = complex_normal(rng, 2)
    np.testing.assert_allclose(receive(H, np.zeros(8, dtype=complex), n), n, atol=0)


def test_receive_nsp_kills_an_per_realization(designs14, profile14, factors14, rng):
    design = designs14["max-grp-nsp"]
    desired = channel_matrix([30.0, 45.0], ArrayConfig(16, 0.5))
    x = qpsk_modulate(random_bits(rng, 4))
    amp = factors14.alpha1 * profile14.beta1 * math.sqrt(profile14.total_power)
    for _ in range(10):
        z = complex_normal(rng, 12)
        s = transmit_signal(design.vectors, x, design.an_projector, z, profile14, factors14)
        y = receive(desired, s, np.zeros(2, dtype=complex))
        wanted = amp * (desired.conj().T @ (design.vectors[0] * x[0] + design.vectors[1] * x[1]))
        np.testing.assert_allclose(y, wanted, atol=1e-10)


def test_receive_eavesdropper_orthogonal_to_beams_sees_only_an(rng):
    cfg = ArrayConfig(16, 0.5)
    desired = channel_matrix([30.0, 45.0], cfg)
    # one beam per "group": columns of the desired matrix orthonormalized
    q, _ = np.linalg.qr(desired)
    vectors = [q[:, 0], q[:, 1]]
    eve = null_space_basis(q)[:, :1]
    T = null_space_basis(q)[:, 1:3]
    profile = PowerProfile(1.0, math.sqrt(0.9), math.sqrt(0.1), 0.01, 0.01)
    factors = norm_factors(profile, 2, 2)
    x = qpsk_modulate(random_bits(rng, 4))
    z = complex_normal(rng, 2)
    s = transmit_signal(vectors, x, T, z, profile, factors)
    y = receive(eve, s, np.zeros(1, dtype=complex))
    an_only = factors.alpha2 * profile.beta2 * (eve.conj().T @ (T @ z))
    np.testing.assert_allclose(y, an_only, atol=1e-12)


def test_receive_dimension_checks(rng):
    H = channel_matrix([30.0, 60.0], ArrayConfig(8, 0.5))
    with pytest.raises(ValueError):
        receive(H, np.zeros(7, dtype=complex), np.zeros(2, dtype=complex))
    with pytest.raises(ValueError):
        receive(H, np.zeros(8, dtype=complex), np.zeros(3, dtype=complex))
