import numpy as np
import pytest

from irs_noma.channel import (
    ChannelRealization,
    SystemConfig,
    all_effective_gains,
    config_from_items,
    effective_gain,
    load_config,
    path_loss_linear,
    sample_rician,
    sample_scenario,
)


def test_rician_collapses_to_los_for_huge_k():
    rng = np.random.default_rng(0)
    out = sample_rician(np.ones(8), k_factor=1e12, path_loss=1.0, rng=rng)
    assert np.allclose(out, np.ones(8), atol=1e-5)


def test_rician_k0_unit_variance():
    # 1e5 i.i.d. CN(0,1) entries; sample variance must sit in [0.95, 1.05]
    rng = np.random.default_rng(1)
    out = sample_rician(np.ones(100_000), k_factor=0.0, path_loss=1.0, rng=rng)
    var = np.mean(np.abs(out) ** 2)
    assert 0.95 <= var <= 1.05
    assert abs(np.mean(out)) < 0.02


def test_rician_k10_los_weight():
    rng = np.random.default_rng(2)
    out = sample_rician(np.ones(100_000), k_factor=10.0, path_loss=1.0, rng=rng)
    expected = np.sqrt(10.0 / 11.0)
    assert abs(np.mean(out.real) - expected) < 0.02
    assert abs(np.mean(out.imag)) < 0.02


def test_rician_path_loss_scaling():
    rng = np.random.default_rng(3)
    out = sample_rician(np.ones(50_000), k_factor=0.0, path_loss=0.25, rng=rng)
    assert abs(np.mean(np.abs(out) ** 2) - 0.25) < 0.02


def test_rician_parameter_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        sample_rician(np.ones(4), k_factor=-0.1, path_loss=1.0, rng=rng)
    with pytest.raises(ValueError):
        sample_rician(np.ones(4), k_factor=1.0, path_loss=0.0, rng=rng)


def test_path_loss_reference_distance():
    assert path_loss_linear(1.0, 3.7, ref_loss_db=-30.0, ref_dist_m=1.0) == pytest.approx(1e-3)


def test_path_loss_two_decades():
    assert path_loss_linear(10.0, 2.0, -30.0, 1.0) == pytest.approx(1e-5, rel=1e-12)


def test_path_loss_50m():
    assert path_loss_linear(50.0, 2.0, -30.0, 1.0) == pytest.approx(4e-7, rel=1e-12)


def test_path_loss_errors():
    with pytest.raises(ValueError):
        path_loss_linear(0.0, 2.0)
    with pytest.raises(ValueError):
        path_loss_linear(10.0, 2.0, -30.0, 0.0)


def test_effective_gain_cophased_identity():
    g = effective_gain(np.ones(4), np.zeros(4), np.ones(4))
    assert g == pytest.approx(4.0)
    assert abs(g) ** 2 == pytest.approx(16.0)


def test_effective_gain_pi_flip():
    g = effective_gain(np.array([1.0, 1.0]), np.array([0.0, np.pi]), np.array([1.0, -1.0]))
    assert g == pytest.approx(2.0, abs=1e-12)


def test_effective_gain_single_element_modulus():
    rng = np.random.default_rng(4)
    for _ in range(10):
        h_r = np.exp(1j * rng.uniform(0, 2 * np.pi, 1))
        h_t = np.exp(1j * rng.uniform(0, 2 * np.pi, 1))
        theta = rng.uniform(0, 2 * np.pi, 1)
        assert abs(effective_gain(h_r, theta, h_t)) == pytest.approx(1.0, abs=1e-12)


def test_effective_gain_dimension_error():
    with pytest.raises(ValueError):
        effective_gain(np.ones(3), np.zeros(2), np.ones(3))


def _random_vectors(rng, m):
    h_r = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    h_t = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    theta = rng.uniform(0, 2 * np.pi, m)
    return h_r, h_t, theta


def test_common_phase_offset_invariance():
    rng = np.random.default_rng(5)
    for _ in range(20):
        h_r, h_t, theta = _random_vectors(rng, 6)
        c = rng.uniform(0, 2 * np.pi)
        g = effective_gain(h_r, theta, h_t)
        g_shift = effective_gain(h_r, theta + c, h_t * np.exp(-1j * c))
        assert g_shift == pytest.approx(g, abs=1e-12)


def test_triangle_bound_and_cophasing_equality():
    rng = np.random.default_rng(6)
    for _ in range(20):
        h_r, h_t, theta = _random_vectors(rng, 5)
        bound = np.sum(np.abs(h_r) * np.abs(h_t))
        assert abs(effective_gain(h_r, theta, h_t)) <= bound + 1e-9
        cophase = np.angle(h_r) - np.angle(h_t)
        assert abs(effective_gain(h_r, cophase, h_t)) == pytest.approx(bound, rel=1e-9)


def test_all_effective_gains_matches_scalar_path():
    rng = np.random.default_rng(7)
    cfg = SystemConfig(num_users=3, num_elements=5, dist_user_min_m=10, dist_user_max_m=100)
    ch = sample_scenario(cfg, rng)
    theta = rng.uniform(0, 2 * np.pi, 5)
    gains = all_effective_gains(ch, theta)
    for k in range(3):
        assert gains[k] == pytest.approx(effective_gain(ch.h_r[k], theta, ch.h_t), abs=1e-12)


def test_scenario_distances_sorted_descending():
    cfg = SystemConfig(num_users=3, num_elements=4)
    ch = sample_scenario(cfg, np.random.default_rng(8))
    d = ch.user_distances_m
    assert np.all(d[:-1] >= d[1:])


def test_scenario_seed_determinism():
    cfg = SystemConfig(num_users=4, num_elements=4)
    a = sample_scenario(cfg, np.random.default_rng(9))
    b = sample_scenario(cfg, np.random.default_rng(9))
    assert np.array_equal(a.h_t, b.h_t)
    assert np.array_equal(a.h_r, b.h_r)
    assert np.array_equal(a.user_distances_m, b.user_distances_m)


def test_scenario_paper_scale_shapes():
    cfg = SystemConfig()  # table defaults: K = 32, M = 16
    ch = sample_scenario(cfg, np.random.default_rng(10))
    assert ch.h_r.shape == (32, 16)
    assert ch.h_t.shape == (16,)


def test_config_defaults_match_parameter_table():
    cfg = SystemConfig()
    assert cfg.num_users == 32
    assert cfg.num_elements == 16
    assert cfg.tx_power_dbm == 40.0
    assert cfg.bandwidth_hz == 10e6
    assert cfg.noise_psd_dbm_hz == -174.0
    assert cfg.rician_k1 == 10.0 and cfg.rician_k2 == 10.0
    assert cfg.pl_exp_bs_irs == 2.0
    assert cfg.pl_exp_irs_user == 2.8
    assert cfg.dist_bs_irs_m == 50.0
    assert (cfg.dist_user_min_m, cfg.dist_user_max_m) == (200.0, 1500.0)
    assert cfg.power_coeffs.sum() == pytest.approx(1.0, abs=1e-12)


def test_config_rejects_bad_power_coeffs():
    with pytest.raises(ValueError):
        SystemConfig(num_users=2, power_coeffs=np.array([0.5, 0.5]))  # not strictly dominant
    with pytest.raises(ValueError):
        SystemConfig(num_users=2, power_coeffs=np.array([0.7, 0.2]))  # sum != 1
    with pytest.raises(ValueError):
        SystemConfig(num_users=3, power_coeffs=np.array([0.5, 0.3, 0.2]))  # 0.5 < 0.3+0.2


def test_config_rejects_bad_scalars():
    with pytest.raises(ValueError):
        SystemConfig(sic_residual_eps=1.5)
    with pytest.raises(ValueError):
        SystemConfig(dist_user_min_m=300.0, dist_user_max_m=200.0)
    with pytest.raises(ValueError):
        SystemConfig(dist_bs_irs_m=0.0)
    with pytest.raises(ValueError):
        SystemConfig(rician_k1=-1.0)


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "sys.cfg"
    path.write_text(
        "# scenario\n"
        "num_users = 3\n"
        "num_elements = 8\n"
        "tx_power_dbm = 30\n"
        "dist_user_min_m = 10\n"
        "dist_user_max_m = 40\n"
        "power_coeffs = 0.6,0.3,0.1\n"
    )
    cfg = load_config(path)
    assert cfg.num_users == 3
    assert cfg.num_elements == 8
    assert cfg.tx_power_dbm == 30.0
    assert np.allclose(cfg.power_coeffs, [0.6, 0.3, 0.1])


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "sys.cfg"
    path.write_text("num_users = 3\nbogus_key = 1\n")
    with pytest.raises(ValueError, match="bogus_key"):
        load_config(path)
    assert load_config(path, ignore_unknown=True).num_users == 3


def test_config_from_items_types():
    cfg = config_from_items({"num_users": "2", "tx_power_dbm": "17.5"})
    assert isinstance(cfg.num_users, int) and cfg.num_users == 2
    assert cfg.tx_power_dbm == 17.5
