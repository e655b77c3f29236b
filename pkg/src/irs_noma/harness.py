"""Monte-Carlo experiment orchestration and CSV persistence.

Every experiment kind maps a (config, seed, run index) triple to result
rows; per-run seeds are ``seed + run`` so any single run can be reproduced
in isolation. Setting ``IRS_NOMA_THREADS`` > 1 fans the runs out over a
process pool; rows are always emitted in run order, so the output bytes do
not depend on the schedule.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import ChannelRealization, SystemConfig, sample_scenario
from .ddpg import DdpgAgent, TrainConfig, train
from .env import IrsEnv
from .noma import oma_sum_rate, sinr_noma, sum_rate
from .oracle import GridSpec, exhaustive_search, rate_at_phases, snap_to_grid

EXPERIMENT_KINDS = (
    "upperbound_compare",
    "train_curve",
    "noma_vs_oma_users",
    "power_sweep",
    "epsilon_sweep",
    "oracle_only",
)

CSV_COLUMNS = (
    "experiment", "seed", "run", "K", "M", "tx_power_dbm", "epsilon",
    "scheme", "sum_rate", "user_rate", "wall_time_s",
)

# deterministic-policy feedback steps when applying a trained agent to a
# fresh channel: the first action sees zero SINR feedback, later ones refine
POLICY_ROLLOUT_STEPS = 5


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    seed: int
    run: int
    K: int
    M: int
    tx_power_dbm: float
    epsilon: float
    scheme: str
    sum_rate: float
    user_rate: float = None
    wall_time_s: float = 0.0


@dataclass
class ExperimentSpec:
    """One experiment: kind, scenario, learning setup and sweep axes."""

    kind: str
    config: SystemConfig
    train: TrainConfig = field(default_factory=TrainConfig)
    monte_carlo_runs: int = 1
    seed: int = 0
    out_path: str = "results.csv"
    grid_steps: int = 16
    user_counts: tuple = ()
    power_levels_dbm: tuple = ()
    epsilons: tuple = ()
    phase_source: str = "random"
    deterministic: bool = False

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.monte_carlo_runs < 1:
            raise ValueError("monte_carlo_runs must be >= 1")
        if self.kind == "noma_vs_oma_users" and not self.user_counts:
            raise ValueError("noma_vs_oma_users needs a non-empty user_counts sweep")
        if self.kind == "power_sweep" and not self.power_levels_dbm:
            raise ValueError("power_sweep needs a non-empty power_levels_dbm sweep")
        if self.kind == "epsilon_sweep" and not self.epsilons:
            raise ValueError("epsilon_sweep needs a non-empty epsilons sweep")
        if self.phase_source not in ("random", "ddpg"):
            raise ValueError(f"phase_source must be 'random' or 'ddpg', got {self.phase_source!r}")


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows_csv(rows, path):
    """Write result rows atomically with the fixed column order."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(_format(getattr(row, col)) for col in CSV_COLUMNS) + "\n")
    os.replace(tmp, path)


def _user_config(config: SystemConfig, num_users: int) -> SystemConfig:
    return replace(config, num_users=num_users, power_coeffs=None)


def _policy_phases(agent: DdpgAgent, config: SystemConfig,
                   channels: ChannelRealization) -> np.ndarray:
    """Apply a trained policy to one channel via a short deterministic rollout."""
    env = IrsEnv(config, rng=np.random.default_rng(0), channel=channels)
    state = env.reset()
    action = None
    for _ in range(POLICY_ROLLOUT_STEPS):
        action = agent.select_action(env.observed_state_vector(state), explore=False)
        state = env.step(action).next_state
    return action


def train_shared_policy(config: SystemConfig, train_cfg: TrainConfig,
                        seed_key) -> DdpgAgent:
    """Train one agent on freshly drawn channels (one per episode)."""
    rng = np.random.default_rng(seed_key)
    env = IrsEnv(config, rng)
    agent = DdpgAgent(env.observation_dim, env.action_dim, train_cfg, rng)
    train(agent, env, train_cfg, rng)
    return agent


def _run_oracle_only(spec, run, rng):
    channels = sample_scenario(spec.config, rng)
    grid = GridSpec(spec.config.num_elements, spec.grid_steps)
    result = exhaustive_search(channels, spec.config, grid)
    return [_row(spec, run, scheme="oracle", sum_rate=result.best_sum_rate)]


def _run_upperbound_compare(spec, run, rng):
    config = spec.config
    channels = sample_scenario(config, rng)
    grid = GridSpec(config.num_elements, spec.grid_steps)
    oracle_result = exhaustive_search(channels, config, grid)
    env = IrsEnv(config, rng, channel=channels)
    agent = DdpgAgent(env.observation_dim, env.action_dim, spec.train, rng)
    best = {"rate": 0.0}

    def score_snapped(action, outcome):
        rate = rate_at_phases(channels, config, snap_to_grid(action, grid))
        if rate > best["rate"]:
            best["rate"] = rate

    train(agent, env, spec.train, rng, step_hook=score_snapped)
    final = _policy_phases(agent, config, channels)
    final_rate = rate_at_phases(channels, config, snap_to_grid(final, grid))
    best["rate"] = max(best["rate"], final_rate)
    return [
        _row(spec, run, scheme="oracle", sum_rate=oracle_result.best_sum_rate),
        _row(spec, run, scheme="ddpg", sum_rate=best["rate"]),
    ]


def run_training(spec, run):
    """One seeded training run; returns (agent, log, result rows)."""
    rng = np.random.default_rng(spec.seed + run)
    env = IrsEnv(spec.config, rng)
    agent = DdpgAgent(env.observation_dim, env.action_dim, spec.train, rng)
    log = train(agent, env, spec.train, rng)
    rows = [_row(spec, run, scheme="ddpg", sum_rate=rate) for rate in log.sum_rate]
    return agent, log, rows


def _run_train_curve(spec, run, rng):
    _, _, rows = run_training(spec, run)
    return rows


def _run_noma_vs_oma(spec, run, rng, shared_agents):
    rows = []
    for num_users in spec.user_counts:
        config = _user_config(spec.config, num_users)
        channels = sample_scenario(config, rng)
        if spec.phase_source == "ddpg":
            phases = _policy_phases(shared_agents[num_users], config, channels)
        else:
            phases = rng.uniform(0.0, 2.0 * np.pi, config.num_elements)
        gains = (np.conj(channels.h_r) * (np.exp(1j * phases) * channels.h_t)).sum(axis=1)
        noma_report = sum_rate(sinr_noma(
            gains, config.tx_power_watts, config.power_coeffs, config.noise_watts,
            config.sic_residual_eps,
        ))
        oma_report = oma_sum_rate(gains, config.tx_power_watts, config.noise_watts)
        rows.append(_row(spec, run, K=num_users, scheme="noma",
                         sum_rate=noma_report.sum_rate,
                         user_rate=float(noma_report.per_user_rate[-1])))
        rows.append(_row(spec, run, K=num_users, scheme="oma",
                         sum_rate=oma_report.sum_rate,
                         user_rate=float(oma_report.per_user_rate[-1])))
    return rows


def _run_power_sweep(spec, run, rng):
    config = spec.config
    channels = sample_scenario(config, rng)
    phases = rng.uniform(0.0, 2.0 * np.pi, config.num_elements)
    gains = (np.conj(channels.h_r) * (np.exp(1j * phases) * channels.h_t)).sum(axis=1)
    rows = []
    for power_dbm in spec.power_levels_dbm:
        p_watts = 10.0 ** ((power_dbm - 30.0) / 10.0)
        report = sum_rate(sinr_noma(
            gains, p_watts, config.power_coeffs, config.noise_watts,
            config.sic_residual_eps,
        ))
        rows.append(_row(spec, run, tx_power_dbm=float(power_dbm), scheme="noma",
                         sum_rate=report.sum_rate,
                         user_rate=float(report.per_user_rate[-1])))
    return rows


def _run_epsilon_sweep(spec, run, rng):
    config = spec.config
    channels = sample_scenario(config, rng)
    grid = GridSpec(config.num_elements, spec.grid_steps)
    phases = exhaustive_search(channels, config, grid).best_phases
    gains = (np.conj(channels.h_r) * (np.exp(1j * phases) * channels.h_t)).sum(axis=1)
    rows = []
    for eps in spec.epsilons:
        report = sum_rate(sinr_noma(
            gains, config.tx_power_watts, config.power_coeffs, config.noise_watts, eps,
        ))
        rows.append(_row(spec, run, epsilon=float(eps), scheme="noma",
                         sum_rate=report.sum_rate,
                         user_rate=float(report.per_user_rate[-1])))
    return rows


def _row(spec, run, scheme, sum_rate, K=None, M=None, tx_power_dbm=None,
         epsilon=None, user_rate=None, wall_time_s=0.0):
    config = spec.config
    return ResultRow(
        experiment=spec.kind,
        seed=spec.seed,
        run=run,
        K=K if K is not None else config.num_users,
        M=M if M is not None else config.num_elements,
        tx_power_dbm=tx_power_dbm if tx_power_dbm is not None else config.tx_power_dbm,
        epsilon=epsilon if epsilon is not None else config.sic_residual_eps,
        scheme=scheme,
        sum_rate=float(sum_rate),
        user_rate=user_rate,
        wall_time_s=wall_time_s,
    )


def execute_run(spec: ExperimentSpec, run: int, shared_agents=None):
    """All rows of one Monte-Carlo run (seeded with spec.seed + run)."""
    rng = np.random.default_rng(spec.seed + run)
    started = time.perf_counter()
    if spec.kind == "oracle_only":
        rows = _run_oracle_only(spec, run, rng)
    elif spec.kind == "upperbound_compare":
        rows = _run_upperbound_compare(spec, run, rng)
    elif spec.kind == "train_curve":
        rows = _run_train_curve(spec, run, rng)
    elif spec.kind == "noma_vs_oma_users":
        rows = _run_noma_vs_oma(spec, run, rng, shared_agents)
    elif spec.kind == "power_sweep":
        rows = _run_power_sweep(spec, run, rng)
    else:
        rows = _run_epsilon_sweep(spec, run, rng)
    if not spec.deterministic:
        elapsed = time.perf_counter() - started
        rows = [replace(row, wall_time_s=elapsed) for row in rows]
    return rows


def _worker(args):
    spec, run, shared_agents = args
    return execute_run(spec, run, shared_agents)


def max_workers() -> int:
    raw = os.environ.get("IRS_NOMA_THREADS", "").strip()
    if not raw:
        return 1
    workers = int(raw)
    if workers < 1:
        raise ValueError(f"IRS_NOMA_THREADS must be >= 1, got {raw!r}")
    return workers


def run_experiment(spec: ExperimentSpec):
    """Execute every Monte-Carlo run of the spec and write the CSV."""
    out_dir = os.path.dirname(os.path.abspath(spec.out_path))
    if not os.path.isdir(out_dir):
        raise OSError(f"output directory does not exist: {out_dir}")
    shared_agents = None
    if spec.kind == "noma_vs_oma_users" and spec.phase_source == "ddpg":
        shared_agents = {
            k: train_shared_policy(_user_config(spec.config, k), spec.train,
                                   seed_key=[spec.seed, k])
            for k in spec.user_counts
        }
    workers = min(max_workers(), spec.monte_carlo_runs)
    tasks = [(spec, run, shared_agents) for run in range(spec.monte_carlo_runs)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_run = list(pool.map(_worker, tasks))
    else:
        per_run = [_worker(task) for task in tasks]
    rows = [row for run_rows in per_run for row in run_rows]
    write_rows_csv(rows, spec.out_path)
    return rows
