import numpy as np
import pytest

from irs_noma.noma import (
    allocate_power,
    noise_power_watts,
    oma_sum_rate,
    sinr_noma,
    sum_rate,
)


def eq5_sinr_reference(gains, p_watts, beta, sigma2):
    """Perfect-SIC SINR, transcribed directly: interference only from not-yet-decoded users.

    Squared moduli come from the vectorized abs so the bit-exact comparison
    is not defeated by numpy's 1-ulp scalar/array abs discrepancy.
    """
    num_users = len(gains)
    g2_all = np.abs(gains) ** 2
    out = np.empty(num_users)
    for k in range(num_users):
        g2 = g2_all[k]
        interference = 0.0
        for i in range(k + 1, num_users):
            interference += g2 * (beta[i] * p_watts)
        out[k] = g2 * (beta[k] * p_watts) / (interference + sigma2)
    return out


def test_allocate_power_single_user():
    assert np.array_equal(allocate_power(1), np.array([1.0]))


def test_allocate_power_two_users():
    beta = allocate_power(2)
    assert np.allclose(beta, [2.0 / 3.0, 1.0 / 3.0], atol=1e-15)
    assert beta[0] > beta[1]


def test_allocate_power_three_users():
    beta = allocate_power(3)
    assert np.allclose(beta, [4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0], atol=1e-15)
    assert beta[0] > beta[1] + beta[2]


@pytest.mark.parametrize("num_users", [1, 2, 3, 8, 32])
def test_allocate_power_invariants(num_users):
    beta = allocate_power(num_users)
    assert beta.sum() == pytest.approx(1.0, abs=1e-12)
    for k in range(num_users):
        assert beta[k] > beta[k + 1 :].sum()


def test_allocate_power_rejects_zero_users():
    with pytest.raises(ValueError):
        allocate_power(0)


def test_noise_power_one_hertz():
    assert noise_power_watts(-174.0, 1.0) == pytest.approx(10 ** (-20.4), rel=1e-12)


def test_noise_power_ten_megahertz():
    # -174 + 70 = -104 dBm
    assert noise_power_watts(-174.0, 1e7) == pytest.approx(10 ** (-13.4), rel=1e-12)


def test_noise_power_dbm_identity():
    assert noise_power_watts(-30.0, 1.0) == pytest.approx(1e-6, rel=1e-12)


def test_noise_power_rejects_bad_bandwidth():
    with pytest.raises(ValueError):
        noise_power_watts(-174.0, 0.0)


def test_sinr_two_users_perfect_sic():
    gains = np.array([1.0 + 0j, 1.0 + 0j])
    beta = np.array([2.0 / 3.0, 1.0 / 3.0])
    got = sinr_noma(gains, 1.0, beta, 1.0, eps=0.0)
    assert got[0] == pytest.approx(0.5, abs=1e-15)
    assert got[1] == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_sinr_two_users_full_residual():
    gains = np.array([1.0 + 0j, 1.0 + 0j])
    beta = np.array([2.0 / 3.0, 1.0 / 3.0])
    got = sinr_noma(gains, 1.0, beta, 1.0, eps=1.0)
    assert got[0] == pytest.approx(0.5, abs=1e-15)  # user 1 performs no SIC
    assert got[1] == pytest.approx(0.2, abs=1e-15)  # (1/3) / (2/3 + 1)


def test_sinr_eps_zero_is_bit_exact_eq5():
    rng = np.random.default_rng(11)
    for _ in range(300):
        num_users = int(rng.integers(1, 8))
        gains = rng.standard_normal(num_users) + 1j * rng.standard_normal(num_users)
        p = 10.0 ** rng.uniform(-3, 3)
        sigma2 = 10.0 ** rng.uniform(-12, 0)
        beta = allocate_power(num_users)
        ours = sinr_noma(gains, p, beta, sigma2, eps=0.0)
        ref = eq5_sinr_reference(gains, p, beta, sigma2)
        assert np.array_equal(ours, ref)


def test_sinr_boundary_denominators_three_users():
    # user 1: no residual term; user 3: no un-decoded interference
    gains = np.array([0.5 + 0.5j, 1.0 - 2.0j, 0.25 + 0j])
    beta = allocate_power(3)
    p, sigma2, eps = 2.0, 0.1, 0.7
    got = sinr_noma(gains, p, beta, sigma2, eps)
    g2 = np.abs(gains) ** 2
    pk = beta * p
    assert got[0] == pytest.approx(g2[0] * pk[0] / (g2[0] * pk[1] + g2[0] * pk[2] + sigma2), rel=1e-12)
    assert got[1] == pytest.approx(
        g2[1] * pk[1] / (eps * g2[1] * pk[0] + g2[1] * pk[2] + sigma2), rel=1e-12
    )
    assert got[2] == pytest.approx(
        g2[2] * pk[2] / (eps * (g2[2] * pk[0] + g2[2] * pk[1]) + sigma2), rel=1e-12
    )


def test_sinr_monotone_in_eps():
    rng = np.random.default_rng(12)
    eps_grid = [0.0, 1e-3, 1e-2, 1e-1, 1.0]
    for _ in range(50):
        num_users = int(rng.integers(2, 6))
        gains = rng.standard_normal(num_users) + 1j * rng.standard_normal(num_users)
        beta = allocate_power(num_users)
        sinrs = [sinr_noma(gains, 3.0, beta, 1e-6, eps=e) for e in eps_grid]
        for lo, hi in zip(sinrs[:-1], sinrs[1:]):
            assert np.all(hi[1:] < lo[1:])  # strict for every SIC-performing user
            assert hi[0] == lo[0]  # user 1 never cancels


def test_sinr_monotone_in_power():
    rng = np.random.default_rng(13)
    for _ in range(50):
        num_users = int(rng.integers(1, 6))
        gains = rng.standard_normal(num_users) + 1j * rng.standard_normal(num_users)
        beta = allocate_power(num_users)
        powers = [0.1, 1.0, 10.0, 100.0]
        rates = [
            sum_rate(sinr_noma(gains, p, beta, 1e-9, eps=0.01)).sum_rate for p in powers
        ]
        assert np.all(np.diff(rates) >= 0)


def test_sinr_eps_out_of_range():
    with pytest.raises(ValueError):
        sinr_noma(np.ones(2, dtype=complex), 1.0, allocate_power(2), 1.0, eps=1.5)
    with pytest.raises(ValueError):
        sinr_noma(np.ones(2, dtype=complex), 1.0, allocate_power(2), 1.0, eps=-0.1)


def test_sum_rate_zero_sinr():
    assert sum_rate(np.array([0.0])).sum_rate == 0.0


def test_sum_rate_hand_value():
    report = sum_rate(np.array([0.5, 1.0 / 3.0]))
    assert report.sum_rate == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(report.per_user_rate, np.log2(1.0 + report.per_user_sinr), atol=1e-12)


def test_sum_rate_three_unit_sinrs():
    assert sum_rate(np.array([1.0, 1.0, 1.0])).sum_rate == pytest.approx(3.0, abs=1e-12)


def test_sum_rate_rejects_negative():
    with pytest.raises(ValueError):
        sum_rate(np.array([0.5, -0.1]))


def test_sum_rate_consistency_invariant():
    rng = np.random.default_rng(14)
    sinrs = rng.uniform(0, 50, 10)
    report = sum_rate(sinrs)
    assert np.allclose(report.per_user_rate, np.log2(1 + sinrs), atol=1e-12)
    assert report.sum_rate == pytest.approx(report.per_user_rate.sum(), abs=1e-9)


def test_oma_single_user_matches_noma():
    gains = np.array([0.3 - 0.4j])
    noma = sum_rate(sinr_noma(gains, 5.0, np.array([1.0]), 1e-3, eps=0.0))
    oma = oma_sum_rate(gains, 5.0, 1e-3)
    assert oma.sum_rate == pytest.approx(noma.sum_rate, rel=1e-12)


def test_oma_two_users_hand_value():
    gains = np.array([1.0 + 0j, 1.0 + 0j])
    assert oma_sum_rate(gains, 1.0, 1.0).sum_rate == pytest.approx(1.0, abs=1e-12)


def test_oma_zero_power():
    gains = np.array([1.0 + 0j, 2.0 + 0j])
    assert oma_sum_rate(gains, 0.0, 1.0).sum_rate == 0.0


def test_oma_rejects_empty():
    with pytest.raises(ValueError):
        oma_sum_rate(np.array([]), 1.0, 1.0)


def test_oma_per_user_rates_carry_sharing_factor():
    gains = np.array([1.0 + 0j, 2.0 + 0j, 0.5 + 0j])
    report = oma_sum_rate(gains, 2.0, 0.5)
    assert np.allclose(report.per_user_rate, np.log2(1 + report.per_user_sinr) / 3, atol=1e-12)
