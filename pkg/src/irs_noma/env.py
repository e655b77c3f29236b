"""Learning environment: phase actions in, sum-rate-derived rewards out.

The agent only ever observes the BS-to-surface channel and the SINR
feedback of its previous action; the surface-to-user channels stay hidden
inside the environment. Reward is the increment over the best sum rate
seen so far in the episode, so any step that sets a new record earns
exactly the improvement and every other step is penalized by its
shortfall.
"""

from dataclasses import dataclass

import numpy as np

from .channel import (
    ChannelRealization,
    SystemConfig,
    path_loss_linear,
    sample_scenario,
)
from .noma import sinr_noma, sum_rate

TWO_PI = 2.0 * np.pi


def wrap_phases(phases: np.ndarray) -> np.ndarray:
    """Wrap angles into [0, 2*pi)."""
    return np.mod(np.asarray(phases, dtype=float), TWO_PI)


@dataclass(frozen=True)
class EnvState:
    """Observable channel features plus the previous action and its SINRs."""

    h_t_parts: np.ndarray  # [Re h_t, Im h_t], length 2M
    prev_phases: np.ndarray  # length M
    prev_sinrs: np.ndarray  # length K


@dataclass(frozen=True)
class StepOutcome:
    next_state: EnvState
    reward: float
    sum_rate: float
    is_new_max: bool


class IrsEnv:
    """Single-scenario phase-control environment.

    ``reset`` draws a fresh channel realization (unless the environment was
    pinned to one at construction) and zeroes the episode's running-max sum
    rate. One instance is single-owner mutable state; run independent
    instances for parallel experiments.
    """

    def __init__(
        self,
        config: SystemConfig,
        rng: np.random.Generator,
        channel: ChannelRealization = None,
    ):
        self.config = config
        self._rng = rng
        self._pinned = channel
        self._channel = None
        self._state = None
        self._running_max = 0.0
        self._p_watts = config.tx_power_watts
        self._sigma2 = config.noise_watts
        # feature scale: undo the mean BS->IRS path loss so entries are O(1)
        pl_t = path_loss_linear(config.dist_bs_irs_m, config.pl_exp_bs_irs)
        self._h_t_scale = 1.0 / np.sqrt(pl_t)

    @property
    def observation_dim(self) -> int:
        return 2 * self.config.num_elements + self.config.num_users

    @property
    def action_dim(self) -> int:
        return self.config.num_elements

    @property
    def running_max(self) -> float:
        return self._running_max

    def reset(self) -> EnvState:
        self._channel = self._pinned if self._pinned is not None else sample_scenario(
            self.config, self._rng
        )
        self._running_max = 0.0
        m, k = self.config.num_elements, self.config.num_users
        self._state = EnvState(
            h_t_parts=np.concatenate([self._channel.h_t.real, self._channel.h_t.imag]),
            prev_phases=np.zeros(m),
            prev_sinrs=np.zeros(k),
        )
        return self._state

    def step(self, action: np.ndarray) -> StepOutcome:
        if self._state is None:
            raise RuntimeError("step() before reset()")
        phases = wrap_phases(action)
        if phases.shape != (self.config.num_elements,):
            raise ValueError(
                f"action must have length {self.config.num_elements}, got {phases.shape}"
            )
        gains = (np.conj(self._channel.h_r) * (np.exp(1j * phases) * self._channel.h_t)).sum(axis=1)
        sinrs = sinr_noma(
            gains, self._p_watts, self.config.power_coeffs, self._sigma2,
            self.config.sic_residual_eps,
        )
        report = sum_rate(sinrs)
        reward = report.sum_rate - self._running_max
        is_new_max = report.sum_rate > self._running_max
        if is_new_max:
            self._running_max = report.sum_rate
        self._state = EnvState(
            h_t_parts=self._state.h_t_parts,
            prev_phases=phases,
            prev_sinrs=sinrs,
        )
        return StepOutcome(
            next_state=self._state,
            reward=reward,
            sum_rate=report.sum_rate,
            is_new_max=is_new_max,
        )

    def observed_state_vector(self, state: EnvState) -> np.ndarray:
        """Agent-facing observation: scaled h_t parts and compressed SINR feedback.

        Length 2M + K. The previous phases stay in EnvState for logging but
        are not part of the observation; the hidden per-user channels never
        appear anywhere.
        """
        return np.concatenate([
            state.h_t_parts * self._h_t_scale,
            np.log10(1.0 + state.prev_sinrs),
        ])
