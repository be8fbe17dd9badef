import math

import numpy as np
import pytest

from dmcast.arrays import (
    AngleErrorModel,
    ArrayConfig,
    GroupLayout,
    channel_matrix,
    perturb_angles,
    perturb_layout,
    stacked_desired_channel,
    steering_vector,
)


def test_broadside_steering_is_flat():
    cfg = ArrayConfig(4, 0.5)
    h = steering_vector(90.0, cfg)
    np.testing.assert_allclose(h, np.full(4, 0.5, dtype=complex), atol=1e-15)


def test_steering_two_element_hand_values():
    # psi(n) = (n - 1.5) * 0.5 * cos(60 deg) = (n - 1.5) * 0.25, phases -/+ pi/4
    cfg = ArrayConfig(2, 0.5)
    h = steering_vector(60.0, cfg)
    expected = np.array([np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)]) / math.sqrt(2)
    np.testing.assert_allclose(h, expected, atol=1e-15)


def test_steering_unit_norm_and_conjugate_symmetry():
    rng = np.random.default_rng(7)
    for _ in range(50):
        cfg = ArrayConfig(int(rng.integers(2, 40)), float(rng.uniform(0.1, 2.0)))
        theta = float(rng.uniform(0.5, 179.5))
        h = steering_vector(theta, cfg)
        assert abs(np.linalg.norm(h) - 1.0) < 1e-12
        np.testing.assert_allclose(h, np.conj(h[::-1]), atol=1e-12)


def test_steering_inner_product_bounded():
    cfg = ArrayConfig(16, 0.5)
    h1 = steering_vector(30.0, cfg)
    assert abs(abs(np.vdot(h1, h1)) - 1.0) < 1e-12
    for theta in (10.0, 31.0, 90.0, 150.0):
        assert abs(np.vdot(h1, steering_vector(theta, cfg))) < 1.0 - 1e-6


def test_steering_rejects_out_of_sector():
    cfg = ArrayConfig(8)
    for theta in (-1.0, 180.5, 270.0):
        with pytest.raises(ValueError):
            steering_vector(theta, cfg)


def test_array_config_validation():
    with pytest.raises(ValueError):
        ArrayConfig(1)
    with pytest.raises(ValueError):
        ArrayConfig(8, 0.0)


def test_beam_width():
    cfg = ArrayConfig(16, 0.5)
    assert abs(cfg.beam_width_rad - 0.25) < 1e-15
    assert abs(cfg.beam_width_deg - math.degrees(0.25)) < 1e-12


def test_channel_matrix_single_angle_is_steering_column():
    cfg = ArrayConfig(8, 0.5)
    H = channel_matrix([42.0], cfg)
    assert H.shape == (8, 1)
    np.testing.assert_allclose(H[:, 0], steering_vector(42.0, cfg), atol=1e-15)


def test_channel_matrix_paper_shape_and_norms(paper_array):
    H = channel_matrix([30.0, 45.0], paper_array)
    assert H.shape == (16, 2)
    np.testing.assert_allclose(np.linalg.norm(H, axis=0), np.ones(2), atol=1e-12)


def test_channel_matrix_duplicate_angle_is_rank_one():
    cfg = ArrayConfig(8, 0.5)
    H = channel_matrix([77.0, 77.0], cfg)
    evals = np.linalg.eigvalsh(H.conj().T @ H)
    np.testing.assert_allclose(sorted(evals), [0.0, 2.0], atol=1e-12)


def test_channel_matrix_rejects_empty():
    with pytest.raises(ValueError):
        channel_matrix([], ArrayConfig(8))


def test_stacked_channel_single_group_matches(paper_array):
    layout = GroupLayout(((30.0, 45.0),), (90.0,))
    np.testing.assert_allclose(
        stacked_desired_channel(layout, paper_array),
        channel_matrix([30.0, 45.0], paper_array),
        atol=1e-15,
    )


def test_stacked_channel_paper_layout(paper_layout, paper_array):
    H = stacked_desired_channel(paper_layout, paper_array)
    assert H.shape == (16, 4)
    # distinct, well-separated directions give a solidly full-rank stack
    smin = np.linalg.svd(H, compute_uv=False)[-1]
    assert smin > 1e-6


def test_group_layout_validation():
    with pytest.raises(ValueError):
        GroupLayout((), (90.0,))
    with pytest.raises(ValueError):
        GroupLayout(((30.0,), ()), (90.0,))
    with pytest.raises(ValueError):
        GroupLayout(((30.0,),), ())
    with pytest.raises(ValueError):
        GroupLayout(((0.0, 45.0),), (90.0,))
    with pytest.raises(ValueError):
        GroupLayout(((30.0,),), (180.0,))
    layout = GroupLayout(((30.0, 45.0), (120.0,)), (70.0, 78.0))
    assert layout.n_groups == 2
    assert layout.group_sizes == (2, 1)
    assert layout.total_desired == 3
    assert layout.n_eavesdroppers == 2


def test_perturb_zero_error_is_identity(rng):
    model = AngleErrorModel(0.0)
    angles = np.array([30.0, 45.0, 120.0])
    np.testing.assert_array_equal(perturb_angles(angles, model, rng), angles)


def test_perturb_statistics():
    model = AngleErrorModel(5.0)
    rng = np.random.default_rng(99)
    base = np.full(100_000, 90.0)
    eps = perturb_angles(base, model, rng) - base
    assert abs(eps.mean()) < 0.1
    assert np.max(np.abs(eps)) <= 5.0


def test_perturb_deterministic_given_seed():
    model = AngleErrorModel(3.0)
    a = perturb_angles([30.0, 45.0], model, np.random.default_rng(5))
    b = perturb_angles([30.0, 45.0], model, np.random.default_rng(5))
    np.testing.assert_array_equal(a, b)


def test_perturb_clips_into_sector():
    model = AngleErrorModel(30.0)
    rng = np.random.default_rng(2)
    out = perturb_angles(np.full(1000, 1.0), model, rng)
    assert np.all(out > 0.0) and np.all(out < 180.0)


def test_perturb_layout_perturbs_everything(paper_layout):
    model = AngleErrorModel(5.0)
    measured = perturb_layout(paper_layout, model, np.random.default_rng(11))
    assert measured.group_sizes == paper_layout.group_sizes
    flat_in = [a for g in paper_layout.desired_angles for a in g] + list(paper_layout.eavesdropper_angles)
    flat_out = [a for g in measured.desired_angles for a in g] + list(measured.eavesdropper_angles)
    diffs = np.array(flat_out) - np.array(flat_in)
    assert np.all(np.abs(diffs) <= 5.0)
    assert np.all(np.abs(diffs) > 0.0)


def test_error_model_for_array(paper_array):
    model = AngleErrorModel.for_array(5.0, paper_array)
    assert model.beam_width_rad == paper_array.beam_width_rad
    with pytest.raises(ValueError):
        AngleErrorModel(-1.0)
