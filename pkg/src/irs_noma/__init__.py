"""IRS-assisted downlink NOMA simulator with DDPG phase-shift control."""

from ._accel import NUMBA_ENABLED
from .channel import (
    ChannelRealization,
    SystemConfig,
    all_effective_gains,
    effective_gain,
    load_config,
    path_loss_linear,
    sample_rician,
    sample_scenario,
)
from .ddpg import DdpgAgent, OUProcess, ReplayBuffer, TrainConfig, TrainingLog, train
from .env import EnvState, IrsEnv, StepOutcome, wrap_phases
from .harness import ExperimentSpec, ResultRow, run_experiment, write_rows_csv
from .nn import DenseNet, soft_update
from .noma import (
    RateReport,
    allocate_power,
    noise_power_watts,
    oma_sum_rate,
    sinr_noma,
    sum_rate,
)
from .oracle import (
    ComplexityEstimate,
    GridSpec,
    OracleResult,
    complexity_estimate,
    exhaustive_search,
    rate_at_phases,
    snap_to_grid,
)

__version__ = "0.1.0"
