"""Exhaustive search over quantized phase configurations.

Every element phase is restricted to the N-point grid {0, d, 2d, ...} with
d = 2*pi/N, and all N^M combinations are scored by NOMA sum rate. The
search is the performance upper bound the learned policy is measured
against. Combination ``idx`` encodes the per-element grid steps with
element 0 as the most significant digit, so the first strict maximum in
index order is also the lexicographically lowest tie winner.
"""

from dataclasses import dataclass

import numpy as np

from ._accel import NUMBA_ENABLED, maybe_jit
from .channel import ChannelRealization, SystemConfig
from .noma import sinr_noma, sum_rate

# N^M may not exceed 2^MAX_GRID_BITS: keeps the combination counter in
# 64-bit range and the enumeration desk-sized.
MAX_GRID_BITS = 40.0


@dataclass(frozen=True)
class GridSpec:
    """Phase grid: N points per element, step 2*pi/N."""

    num_elements: int
    steps_per_element: int

    def __post_init__(self):
        if self.num_elements < 1:
            raise ValueError(f"num_elements must be >= 1, got {self.num_elements}")
        if self.steps_per_element < 1:
            raise ValueError(f"steps_per_element must be >= 1, got {self.steps_per_element}")
        bits = self.num_elements * np.log2(self.steps_per_element)
        if bits > MAX_GRID_BITS:
            raise ValueError(
                f"grid too large: M*log2(N) = {bits:.1f} exceeds the {MAX_GRID_BITS:.0f}-bit guard"
            )

    @property
    def total_combinations(self) -> int:
        return self.steps_per_element**self.num_elements


@dataclass(frozen=True)
class OracleResult:
    best_phases: np.ndarray
    best_sum_rate: float
    evaluations: int


# Combinations whose rates agree to this relative tolerance count as tied;
# the lexicographically lowest index wins. Exact ties are routine here: a
# common offset on every element rotates each gain without changing its
# magnitude, so all-equal-digit combinations score identically.
TIE_REL_TOL = 1e-12


def _combo_rate(a, phase_table, pk, sigma2, eps, idx):
    num_users, m = a.shape
    n = phase_table.shape[0]
    rate = 0.0
    for k in range(num_users):
        g = 0.0 + 0.0j
        rem = idx
        for i in range(m - 1, -1, -1):
            g += a[k, i] * phase_table[rem % n]
            rem //= n
        g2 = g.real * g.real + g.imag * g.imag
        residual = 0.0
        for j in range(k):
            residual += g2 * pk[j]
        interference = 0.0
        for i2 in range(k + 1, num_users):
            interference += g2 * pk[i2]
        rate += np.log2(1.0 + g2 * pk[k] / (eps * residual + interference + sigma2))
    return rate


def _search_loop(a, phase_table, pk, sigma2, eps):
    # a: (K, M) per-element cascade coefficients conj(h_r) * h_t
    # phase_table: (N,) unit phasors of the grid points
    m = a.shape[1]
    n = phase_table.shape[0]
    total = 1
    for _ in range(m):
        total *= n
    best_rate = -1.0
    for idx in range(total):
        rate = _combo_rate(a, phase_table, pk, sigma2, eps, idx)
        if rate > best_rate:
            best_rate = rate
    threshold = best_rate - TIE_REL_TOL * max(best_rate, 1.0)
    for idx in range(total):
        rate = _combo_rate(a, phase_table, pk, sigma2, eps, idx)
        if rate >= threshold:
            return idx, rate
    return 0, best_rate


_combo_rate = maybe_jit(_combo_rate)
_search_loop_jit = maybe_jit(_search_loop)


def _search_numpy(a, phase_table, pk, sigma2, eps, chunk=1 << 16):
    """Vectorized fallback: scores the grid in chunks of combinations."""
    num_users, m = a.shape
    n = phase_table.shape[0]
    total = n**m
    place = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    prefix_pk = np.concatenate([[0.0], np.cumsum(pk)[:-1]])
    suffix_pk = pk.sum() - np.cumsum(pk)

    def chunk_rates(start):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // place[None, :]) % n
        g = phase_table[digits] @ a.T  # (chunk, K)
        g2 = np.abs(g) ** 2
        den = eps * g2 * prefix_pk + g2 * suffix_pk + sigma2
        return np.log2(1.0 + g2 * pk / den).sum(axis=1)

    best_rate = -1.0
    for start in range(0, total, chunk):
        best_rate = max(best_rate, float(chunk_rates(start).max()))
    threshold = best_rate - TIE_REL_TOL * max(best_rate, 1.0)
    for start in range(0, total, chunk):
        rates = chunk_rates(start)
        hits = np.nonzero(rates >= threshold)[0]
        if hits.size:
            return start + int(hits[0]), float(rates[hits[0]])
    return 0, best_rate


def exhaustive_search(
    channels: ChannelRealization,
    config: SystemConfig,
    grid: GridSpec,
) -> OracleResult:
    """Enumerate the full phase grid and return the sum-rate argmax.

    Rates within TIE_REL_TOL (relative) of the maximum count as tied and
    the lowest combination index wins; this keeps the winner independent
    of evaluation order and of the kernel backend. The reported rate is
    consistent with re-evaluating the winning phases through the regular
    rate path to within rounding (~1e-14 relative).
    """
    if grid.num_elements != config.num_elements:
        raise ValueError(
            f"grid is for {grid.num_elements} elements, config has {config.num_elements}"
        )
    n = grid.steps_per_element
    delta = 2.0 * np.pi / n
    phase_table = np.exp(1j * delta * np.arange(n))
    a = np.conj(channels.h_r) * channels.h_t[None, :]
    pk = config.power_coeffs * config.tx_power_watts
    sigma2 = config.noise_watts
    eps = config.sic_residual_eps
    if NUMBA_ENABLED:
        best_idx, best_rate = _search_loop_jit(a, phase_table, pk, sigma2, eps)
    else:
        best_idx, best_rate = _search_numpy(a, phase_table, pk, sigma2, eps)
    digits = np.empty(grid.num_elements, dtype=np.int64)
    rem = best_idx
    for i in range(grid.num_elements - 1, -1, -1):
        digits[i] = rem % n
        rem //= n
    return OracleResult(
        best_phases=digits * delta,
        best_sum_rate=float(best_rate),
        evaluations=grid.total_combinations,
    )


def grid_index(phases: np.ndarray, grid: GridSpec) -> int:
    """Flat combination index of grid-aligned phases (element 0 most significant)."""
    n = grid.steps_per_element
    delta = 2.0 * np.pi / n
    digits = np.round(np.asarray(phases) / delta).astype(np.int64) % n
    idx = 0
    for d in digits:
        idx = idx * n + int(d)
    return idx


def snap_to_grid(phases: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Nearest grid point of each phase, wrapped into [0, 2*pi)."""
    n = grid.steps_per_element
    delta = 2.0 * np.pi / n
    return (np.round(np.asarray(phases, dtype=float) / delta) % n) * delta


def rate_at_phases(
    channels: ChannelRealization, config: SystemConfig, phases: np.ndarray
) -> float:
    """NOMA sum rate of one phase configuration through the regular rate path."""
    gains = (np.conj(channels.h_r) * (np.exp(1j * np.asarray(phases, dtype=float)) * channels.h_t)).sum(axis=1)
    sinrs = sinr_noma(
        gains, config.tx_power_watts, config.power_coeffs, config.noise_watts,
        config.sic_residual_eps,
    )
    return sum_rate(sinrs).sum_rate


@dataclass(frozen=True)
class ComplexityEstimate:
    exhaustive_ops: int
    ddpg_ops: int
    saturated: bool


def complexity_estimate(
    num_users: int,
    num_elements: int,
    steps_per_element: int,
    state_size: int,
    hidden_layers: int,
    units_per_layer: int,
    action_size: int,
) -> ComplexityEstimate:
    """Operation counts of the two approaches: K*N^M versus S*n*U*A.

    Counts above 2^63 - 1 are clamped and flagged as saturated.
    """
    args = (num_users, num_elements, steps_per_element, state_size,
            hidden_layers, units_per_layer, action_size)
    if any(v < 1 for v in args):
        raise ValueError("all complexity arguments must be positive")
    limit = 2**63 - 1
    exhaustive = num_users * steps_per_element**num_elements
    ddpg = state_size * hidden_layers * units_per_layer * action_size
    saturated = exhaustive > limit or ddpg > limit
    return ComplexityEstimate(
        exhaustive_ops=min(exhaustive, limit),
        ddpg_ops=min(ddpg, limit),
        saturated=saturated,
    )
