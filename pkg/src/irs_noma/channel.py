"""Rician fading channels with distance-based path loss.

The base station reaches every user through an M-element reflecting
surface; there is no direct link. Both hops fade according to a Rician
model whose line-of-sight part is the all-ones vector (single-antenna
terminals, no array geometry). Path loss follows a power law anchored at
REF_LOSS_DB for REF_DIST_M.
"""

from dataclasses import dataclass, field, fields

import numpy as np

from .noma import allocate_power, noise_power_watts

# power-law anchor: -30 dB at 1 m
REF_LOSS_DB = -30.0
REF_DIST_M = 1.0


@dataclass
class SystemConfig:
    """Physical-layer and scenario parameters. Defaults are the paper-scale ones."""

    num_users: int = 32
    num_elements: int = 16
    tx_power_dbm: float = 40.0
    bandwidth_hz: float = 10e6
    noise_psd_dbm_hz: float = -174.0
    rician_k1: float = 10.0
    rician_k2: float = 10.0
    pl_exp_bs_irs: float = 2.0
    pl_exp_irs_user: float = 2.8
    dist_bs_irs_m: float = 50.0
    dist_user_min_m: float = 200.0
    dist_user_max_m: float = 1500.0
    sic_residual_eps: float = 0.0
    power_coeffs: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.num_users < 1:
            raise ValueError(f"num_users must be >= 1, got {self.num_users}")
        if self.num_elements < 1:
            raise ValueError(f"num_elements must be >= 1, got {self.num_elements}")
        if self.rician_k1 < 0 or self.rician_k2 < 0:
            raise ValueError("Rician factors must be non-negative")
        if not 0.0 <= self.sic_residual_eps <= 1.0:
            raise ValueError(f"sic_residual_eps must lie in [0, 1], got {self.sic_residual_eps}")
        for name in ("dist_bs_irs_m", "dist_user_min_m", "dist_user_max_m"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.dist_user_min_m > self.dist_user_max_m:
            raise ValueError("dist_user_min_m must not exceed dist_user_max_m")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")
        if self.power_coeffs is None:
            self.power_coeffs = allocate_power(self.num_users)
        else:
            self.power_coeffs = np.asarray(self.power_coeffs, dtype=float)
        beta = self.power_coeffs
        if beta.shape != (self.num_users,):
            raise ValueError(
                f"power_coeffs must have length num_users={self.num_users}, got {beta.shape}"
            )
        if abs(beta.sum() - 1.0) > 1e-12:
            raise ValueError(f"power_coeffs must sum to 1 (got {beta.sum()!r})")
        tail = np.concatenate([np.cumsum(beta[::-1])[-2::-1], [0.0]])
        if not np.all(beta > tail):
            raise ValueError(
                "power_coeffs must decrease strictly and each must exceed the sum of the later ones"
            )

    @property
    def tx_power_watts(self) -> float:
        return 10.0 ** ((self.tx_power_dbm - 30.0) / 10.0)

    @property
    def noise_watts(self) -> float:
        return noise_power_watts(self.noise_psd_dbm_hz, self.bandwidth_hz)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the BS-to-surface vector and the K surface-to-user vectors.

    ``h_r`` is (K, M); row 0 belongs to the farthest user and row K-1 to the
    nearest one (``user_distances_m`` is non-increasing).
    """

    h_t: np.ndarray
    h_r: np.ndarray
    user_distances_m: np.ndarray


def path_loss_linear(
    distance_m: float,
    exponent: float,
    ref_loss_db: float = REF_LOSS_DB,
    ref_dist_m: float = REF_DIST_M,
) -> float:
    """Power-law path loss as a linear power ratio."""
    if distance_m <= 0:
        raise ValueError(f"distance_m must be positive, got {distance_m}")
    if ref_dist_m <= 0:
        raise ValueError(f"ref_dist_m must be positive, got {ref_dist_m}")
    return 10.0 ** (ref_loss_db / 10.0) * (distance_m / ref_dist_m) ** (-exponent)


def sample_rician(
    los_component: np.ndarray,
    k_factor: float,
    path_loss: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Draw one Rician-faded vector scaled to the given path loss.

    The scattered part is i.i.d. circularly symmetric complex Gaussian with
    unit total variance (0.5 per real/imaginary component); k_factor weights
    line-of-sight against scatter. k_factor -> inf collapses to pure LoS,
    k_factor = 0 to Rayleigh.
    """
    if k_factor < 0:
        raise ValueError(f"k_factor must be non-negative, got {k_factor}")
    if path_loss <= 0:
        raise ValueError(f"path_loss must be positive, got {path_loss}")
    los_component = np.asarray(los_component, dtype=complex)
    m = los_component.shape[0]
    nlos = np.sqrt(0.5) * (rng.standard_normal(m) + 1j * rng.standard_normal(m))
    los_w = np.sqrt(k_factor / (k_factor + 1.0))
    nlos_w = np.sqrt(1.0 / (k_factor + 1.0))
    return np.sqrt(path_loss) * (los_w * los_component + nlos_w * nlos)


def effective_gain(h_r_k: np.ndarray, phases: np.ndarray, h_t: np.ndarray) -> complex:
    """Cascaded gain h_r^H diag(e^{j theta}) h_t for one user."""
    h_r_k = np.asarray(h_r_k)
    h_t = np.asarray(h_t)
    phases = np.asarray(phases, dtype=float)
    if not (h_r_k.shape == phases.shape == h_t.shape):
        raise ValueError(
            f"length mismatch: h_r {h_r_k.shape}, phases {phases.shape}, h_t {h_t.shape}"
        )
    return complex(np.sum(np.conj(h_r_k) * np.exp(1j * phases) * h_t))


def all_effective_gains(channels: ChannelRealization, phases: np.ndarray) -> np.ndarray:
    """Cascaded gains of every user for one phase configuration, shape (K,)."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != channels.h_t.shape:
        raise ValueError(f"phases must have length {channels.h_t.shape[0]}")
    return (np.conj(channels.h_r) * (np.exp(1j * phases) * channels.h_t)).sum(axis=1)


def sample_scenario(config: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    """Draw user placements then both fading hops for one scenario.

    User distances are uniform in [dist_user_min_m, dist_user_max_m] and
    sorted so that index 0 is the farthest user.
    """
    distances = rng.uniform(config.dist_user_min_m, config.dist_user_max_m, config.num_users)
    distances = np.sort(distances)[::-1].copy()
    m = config.num_elements
    los = np.ones(m, dtype=complex)
    pl_t = path_loss_linear(config.dist_bs_irs_m, config.pl_exp_bs_irs)
    h_t = sample_rician(los, config.rician_k1, pl_t, rng)
    h_r = np.empty((config.num_users, m), dtype=complex)
    for k in range(config.num_users):
        pl_r = path_loss_linear(distances[k], config.pl_exp_irs_user)
        h_r[k] = sample_rician(los, config.rician_k2, pl_r, rng)
    return ChannelRealization(h_t=h_t, h_r=h_r, user_distances_m=distances)


def parse_kv_file(path) -> dict:
    """Read a flat key-value file (``key = value`` lines, ``#`` comments)."""
    items = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            items[key.strip()] = value.strip()
    return items


def config_from_items(items: dict, ignore_unknown: bool = False) -> SystemConfig:
    """Build a SystemConfig from string key-value pairs; unknown keys are errors."""
    known = {f.name for f in fields(SystemConfig)}
    kwargs = {}
    for key, text in items.items():
        if key not in known:
            if ignore_unknown:
                continue
            raise ValueError(f"unknown SystemConfig key {key!r}")
        if key in ("num_users", "num_elements"):
            kwargs[key] = int(text)
        elif key == "power_coeffs":
            kwargs[key] = np.array([float(t) for t in text.split(",") if t.strip() != ""])
        else:
            kwargs[key] = float(text)
    return SystemConfig(**kwargs)


def load_config(path, ignore_unknown: bool = False) -> SystemConfig:
    """Load a SystemConfig from a flat key-value file.

    With ``ignore_unknown`` the file may carry keys for other components
    (the CLI's combined config files do); they are skipped instead of
    rejected.
    """
    return config_from_items(parse_kv_file(path), ignore_unknown=ignore_unknown)
