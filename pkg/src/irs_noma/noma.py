"""Power allocation, SINR under (im)perfect SIC, NOMA and OMA sum rates.

Users are indexed by decoding order: user 1 is the farthest from the
reflecting surface (largest power share, decoded first everywhere), user K
the nearest (smallest share, decodes and cancels everyone else). With a
residual-cancellation fraction eps > 0, user k keeps eps of the power of
every already-decoded user j < k in its interference budget.
"""

from dataclasses import dataclass

import numpy as np

from ._accel import maybe_jit


@dataclass(frozen=True)
class RateReport:
    """Per-user SINRs (linear), per-user rates and their sum (bits/s/Hz)."""

    per_user_sinr: np.ndarray
    per_user_rate: np.ndarray
    sum_rate: float


def allocate_power(num_users: int) -> np.ndarray:
    """Geometric power split: share of user k is 2^(K-k) / (2^K - 1).

    Shares sum to one, decrease strictly with k, and each share strictly
    exceeds the total share of all later (nearer) users.
    """
    if num_users < 1:
        raise ValueError(f"num_users must be >= 1, got {num_users}")
    k = np.arange(1, num_users + 1)
    return 2.0 ** (num_users - k) / (2.0**num_users - 1.0)


def noise_power_watts(noise_psd_dbm_hz: float, bandwidth_hz: float) -> float:
    """Thermal noise power in watts over the given bandwidth."""
    if bandwidth_hz <= 0:
        raise ValueError(f"bandwidth_hz must be positive, got {bandwidth_hz}")
    return 10.0 ** ((noise_psd_dbm_hz + 10.0 * np.log10(bandwidth_hz) - 30.0) / 10.0)


def dbm_to_watts(power_dbm: float) -> float:
    return 10.0 ** ((power_dbm - 30.0) / 10.0)


def _sinr_kernel(g2, pk, sigma2, eps):
    # Residual and un-decoded interference are accumulated term by term in
    # ascending user order; eps = 0 then reproduces the perfect-SIC formula
    # bit for bit.
    n = g2.shape[0]
    out = np.empty(n)
    for k in range(n):
        residual = 0.0
        for j in range(k):
            residual += g2[k] * pk[j]
        interference = 0.0
        for i in range(k + 1, n):
            interference += g2[k] * pk[i]
        out[k] = g2[k] * pk[k] / (eps * residual + interference + sigma2)
    return out


_sinr_kernel = maybe_jit(_sinr_kernel)


def sinr_noma(
    gains: np.ndarray,
    p_watts: float,
    beta: np.ndarray,
    sigma2: float,
    eps: float = 0.0,
) -> np.ndarray:
    """SINR of every user given the cascaded channel gains.

    ``gains`` holds the K complex effective channels; ``beta`` the power
    shares in decoding order. User 1 performs no cancellation (no residual
    term), user K sees no un-decoded interference.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    gains = np.asarray(gains, dtype=complex)
    beta = np.asarray(beta, dtype=float)
    if gains.shape != beta.shape:
        raise ValueError(f"gains and beta lengths differ: {gains.shape} vs {beta.shape}")
    g2 = np.abs(gains) ** 2
    pk = beta * p_watts
    return _sinr_kernel(g2, pk, float(sigma2), float(eps))


def sum_rate(sinrs: np.ndarray) -> RateReport:
    """Shannon rates log2(1 + SINR) per user and their sum."""
    sinrs = np.asarray(sinrs, dtype=float)
    if np.any(sinrs < 0):
        raise ValueError("SINRs must be non-negative")
    rates = np.log2(1.0 + sinrs)
    return RateReport(per_user_sinr=sinrs, per_user_rate=rates, sum_rate=float(rates.sum()))


def oma_sum_rate(gains: np.ndarray, p_watts: float, sigma2: float) -> RateReport:
    """Orthogonal baseline: each user gets a 1/K slice of the resources.

    Every user enjoys the full transmit power, interference-free, but its
    rate carries the 1/K sharing factor.
    """
    gains = np.asarray(gains)
    if gains.size == 0:
        raise ValueError("gains must be non-empty")
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    num_users = gains.shape[0]
    snrs = np.abs(gains) ** 2 * p_watts / sigma2
    rates = np.log2(1.0 + snrs) / num_users
    return RateReport(per_user_sinr=snrs, per_user_rate=rates, sum_rate=float(rates.sum()))
