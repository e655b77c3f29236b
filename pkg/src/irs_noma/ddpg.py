"""Deterministic-policy actor-critic with replay, OU exploration and soft targets.

The actor maps the observation to M phases through a tanh head scaled to
[0, 2*pi); the critic scores (observation, phases) pairs with a single
Q-value. Four networks total: main and slowly tracking target copies of
each. Training interleaves one critic step, one actor step and one soft
update per environment step once the replay buffer can fill a batch.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .env import IrsEnv, wrap_phases
from .nn import DenseNet, soft_update

TWO_PI = 2.0 * np.pi


@dataclass
class TrainConfig:
    """Learning hyperparameters; defaults follow the simulation parameter table."""

    actor_lr: float = 5e-4
    critic_lr: float = 1e-3
    gamma_discount: float = 0.05
    tau: float = 0.05
    batch_size: int = 64
    buffer_capacity: int = 10000
    steps_per_episode: int = 1000
    num_episodes: int = 10
    hidden_units: tuple = (256, 256)
    ou_theta: float = 0.15
    ou_sigma: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.gamma_discount <= 1.0:
            raise ValueError(f"gamma_discount must lie in [0, 1], got {self.gamma_discount}")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [0, 1], got {self.tau}")
        if self.batch_size > self.buffer_capacity:
            raise ValueError("batch_size must not exceed buffer_capacity")


class OUProcess:
    """Mean-reverting Gaussian noise with temporally correlated samples."""

    def __init__(self, size: int, mu: float = 0.0, theta: float = 0.15,
                 sigma: float = 0.1, dt: float = 1.0):
        self.mu = mu
        self.theta = theta
        self.sigma = sigma
        self.dt = dt
        self.x = np.full(size, mu, dtype=float)

    def reset(self):
        self.x = np.full_like(self.x, self.mu)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        drift = self.theta * (self.mu - self.x) * self.dt
        diffusion = self.sigma * np.sqrt(self.dt) * rng.standard_normal(self.x.shape[0])
        self.x = self.x + drift + diffusion
        return self.x.copy()


class ReplayBuffer:
    """Fixed-capacity FIFO of transitions with uniform random sampling."""

    def __init__(self, capacity: int, state_dim: int, action_dim: int):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.states = np.zeros((capacity, state_dim))
        self.actions = np.zeros((capacity, action_dim))
        self.rewards = np.zeros(capacity)
        self.next_states = np.zeros((capacity, state_dim))
        self._cursor = 0
        self._count = 0

    def __len__(self):
        return self._count

    def add(self, state, action, reward, next_state):
        i = self._cursor
        self.states[i] = state
        self.actions[i] = action
        self.rewards[i] = reward
        self.next_states[i] = next_state
        self._cursor = (i + 1) % self.capacity
        self._count = min(self._count + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator):
        if self._count == 0:
            raise ValueError("cannot sample from an empty buffer")
        idx = rng.integers(0, self._count, size=batch_size)
        return (
            self.states[idx],
            self.actions[idx],
            self.rewards[idx],
            self.next_states[idx],
        )


class DdpgAgent:
    """Actor, critic, their target copies, replay buffer and exploration noise."""

    def __init__(self, state_dim: int, action_dim: int, cfg: TrainConfig,
                 rng: np.random.Generator):
        h1, h2 = cfg.hidden_units
        self.cfg = cfg
        self.state_dim = state_dim
        self.action_dim = action_dim
        self.actor = DenseNet(
            [state_dim, h1, h2, action_dim], ["relu", "relu", "tanh"], rng,
            final_scale=1e-3,
        )
        self.critic = DenseNet(
            [state_dim + action_dim, h1, h2, 1], ["relu", "relu", "linear"], rng,
        )
        self.target_actor = self.actor.copy()
        self.target_critic = self.critic.copy()
        self.buffer = ReplayBuffer(cfg.buffer_capacity, state_dim, action_dim)
        self.noise = OUProcess(action_dim, theta=cfg.ou_theta, sigma=cfg.ou_sigma)

    def _actor_phases(self, net: DenseNet, states):
        out, cache = net.forward(states)
        return np.pi * (out + 1.0), cache

    def select_action(self, state_vector, explore: bool,
                      rng: np.random.Generator = None) -> np.ndarray:
        """Policy action for one observation, optionally with OU noise, in [0, 2*pi)."""
        phases, _ = self._actor_phases(self.actor, state_vector)
        if explore:
            if rng is None:
                raise ValueError("explore=True requires an rng")
            phases = phases + self.noise.sample(rng)
        return wrap_phases(phases)

    def compute_targets(self, rewards, next_states, gamma: float) -> np.ndarray:
        """Bootstrapped targets r + gamma * Q'(s', mu'(s')) from the target networks."""
        next_actions, _ = self._actor_phases(self.target_actor, next_states)
        q_next, _ = self.target_critic.forward(
            np.concatenate([next_states, next_actions], axis=1)
        )
        return rewards + gamma * q_next[:, 0]

    def critic_gradients(self, states, actions, targets):
        """Mean-squared-error loss and its gradients w.r.t. critic parameters."""
        q, cache = self.critic.forward(np.concatenate([states, actions], axis=1))
        residual = q[:, 0] - targets
        loss = float(np.mean(residual**2))
        grad_q = (2.0 / residual.shape[0]) * residual[:, None]
        grads, _ = self.critic.backward(cache, grad_q)
        return loss, grads

    def critic_update(self, states, actions, targets) -> float:
        """One Adam step on the critic; returns the pre-update loss."""
        loss, grads = self.critic_gradients(states, actions, targets)
        if not np.isfinite(loss):
            raise FloatingPointError(f"critic loss is not finite: {loss}")
        self.critic.adam_step(grads, self.cfg.critic_lr)
        return loss

    def policy_gradients(self, states):
        """Gradients of the batch-mean Q w.r.t. actor parameters (ascent direction).

        Chains the critic's action-input gradient through the tanh-to-phase
        scaling into the actor; critic parameters are left untouched.
        """
        phases, actor_cache = self._actor_phases(self.actor, states)
        q, critic_cache = self.critic.forward(np.concatenate([states, phases], axis=1))
        mean_q = float(np.mean(q))
        grad_q = np.full_like(q, 1.0 / q.shape[0])
        _, input_grad = self.critic.backward(critic_cache, grad_q)
        grad_actions = input_grad[:, self.state_dim:]
        grads, _ = self.actor.backward(actor_cache, grad_actions * np.pi)
        return grads, mean_q

    def actor_update(self, states) -> float:
        """One Adam ascent step on the actor; returns the batch-mean Q estimate."""
        grads, mean_q = self.policy_gradients(states)
        if not np.isfinite(mean_q):
            raise FloatingPointError(f"actor objective is not finite: {mean_q}")
        descent = [(-dw, -db) for dw, db in grads]
        self.actor.adam_step(descent, self.cfg.actor_lr)
        return mean_q

    def soft_update_targets(self):
        soft_update(self.target_actor, self.actor, self.cfg.tau)
        soft_update(self.target_critic, self.critic, self.cfg.tau)

    def networks_finite(self) -> bool:
        return (
            self.actor.is_finite()
            and self.critic.is_finite()
            and self.target_actor.is_finite()
            and self.target_critic.is_finite()
        )

    def save(self, prefix):
        """Write the four networks as <prefix>.{actor,critic,target_actor,target_critic}.net."""
        for name in ("actor", "critic", "target_actor", "target_critic"):
            getattr(self, name).save(f"{prefix}.{name}.net")

    def load(self, prefix):
        for name in ("actor", "critic", "target_actor", "target_critic"):
            setattr(self, name, DenseNet.load(f"{prefix}.{name}.net"))


@dataclass
class TrainingLog:
    """Per-step training trace plus the best sum rate of every episode."""

    episode: list = field(default_factory=list)
    step: list = field(default_factory=list)
    reward: list = field(default_factory=list)
    sum_rate: list = field(default_factory=list)
    best_sum_rate: list = field(default_factory=list)
    episode_best: list = field(default_factory=list)

    def append(self, episode, step, reward, sum_rate, best_sum_rate):
        self.episode.append(episode)
        self.step.append(step)
        self.reward.append(reward)
        self.sum_rate.append(sum_rate)
        self.best_sum_rate.append(best_sum_rate)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["episode", "step", "reward", "sum_rate", "best_sum_rate"])
            for row in zip(self.episode, self.step, self.reward,
                           self.sum_rate, self.best_sum_rate):
                writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def train(agent: DdpgAgent, env: IrsEnv, cfg: TrainConfig,
          rng: np.random.Generator, step_hook=None) -> TrainingLog:
    """Run the full training loop; learning starts once a batch fits the buffer.

    ``step_hook(action, outcome)``, when given, is called after every
    environment step (the harness uses it to score actions against the
    oracle grid).
    """
    log = TrainingLog()
    for episode in range(cfg.num_episodes):
        state = env.reset()
        agent.noise.reset()
        obs = env.observed_state_vector(state)
        for step in range(cfg.steps_per_episode):
            action = agent.select_action(obs, explore=True, rng=rng)
            outcome = env.step(action)
            next_obs = env.observed_state_vector(outcome.next_state)
            agent.buffer.add(obs, action, outcome.reward, next_obs)
            if len(agent.buffer) >= cfg.batch_size:
                states, actions, rewards, next_states = agent.buffer.sample(
                    cfg.batch_size, rng
                )
                targets = agent.compute_targets(rewards, next_states, cfg.gamma_discount)
                agent.critic_update(states, actions, targets)
                agent.actor_update(states)
                agent.soft_update_targets()
                if not agent.networks_finite():
                    raise FloatingPointError(
                        f"non-finite network parameters at episode {episode} step {step}"
                    )
            log.append(episode, step, outcome.reward, outcome.sum_rate, env.running_max)
            if step_hook is not None:
                step_hook(action, outcome)
            obs = next_obs
        log.episode_best.append(env.running_max)
    return log
