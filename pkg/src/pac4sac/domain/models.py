"""Core value types shared by the environments, agents and the harness."""

from dataclasses import dataclass, field, replace
import sys
from enum import Enum

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

import numpy as np
from numpy.typing import NDArray

from pac4sac.domain.exceptions import ConfigError

FloatArray = NDArray[np.float64]


class Algorithm(StrEnum):
    PAC4SAC = "pac4sac"
    SAC = "sac"


@dataclass(frozen=True, slots=True)
class EnvSpec:
    """Static description of an environment's interface and reward range."""

    name: str
    state_dim: int
    action_dim: int
    action_low: tuple[float, ...]
    action_high: tuple[float, ...]
    r_min: float
    r_max: float
    max_episode_steps: int
    default_steps: int = 10_000  # training budget when a run sets none

    @property
    def action_scale(self) -> FloatArray:
        return (np.asarray(self.action_high) - np.asarray(self.action_low)) / 2.0

    @property
    def action_offset(self) -> FloatArray:
        return (np.asarray(self.action_high) + np.asarray(self.action_low)) / 2.0


@dataclass(frozen=True, slots=True, eq=False)
class Transition:
    state: FloatArray
    action: FloatArray
    reward: float
    next_state: FloatArray
    terminal: bool


@dataclass(frozen=True, slots=True, eq=False)
class TransitionBatch:
    """Column-stacked minibatch of transitions."""

    states: FloatArray
    actions: FloatArray
    rewards: FloatArray
    next_states: FloatArray
    terminals: FloatArray

    def __len__(self) -> int:
        return int(self.rewards.shape[0])


@dataclass(frozen=True, slots=True)
class LossTerms:
    """Which critic loss terms are active: data fit, complexity penalty, correction."""

    data_fit: bool = True
    complexity: bool = True
    correction: bool = True

    @property
    def label(self) -> str:
        names = [
            name
            for name, enabled in (
                ("data_fit", self.data_fit),
                ("complexity", self.complexity),
                ("correction", self.correction),
            )
            if enabled
        ]
        return "+".join(names) or "none"


@dataclass(frozen=True, slots=True)
class TrainingConfig:
    gamma: float = 0.99
    alpha: float = 0.2
    tau: float = 0.005
    learning_rate: float = 1e-3
    batch_size: int = 32
    buffer_capacity: int = 25_000
    action_samples: int = 500
    xi: float = 0.01
    prior_std: float = 1.0
    total_steps: int = 10_000
    warmup_steps: int = 1_000
    loss_terms: LossTerms = field(default_factory=LossTerms)
    policy_entropy_term: bool = True
    hidden_width: int = 256
    layer_norm_affine: bool = True
    layer_norm_eps: float = 1e-5
    posterior_init_log_std: float = -5.0
    log_std_min: float = -20.0
    log_std_max: float = 2.0
    seed: int = 0

    def validate(self) -> None:
        if not 0.0 < self.gamma <= 1.0:
            raise ConfigError("gamma must lie in (0, 1]")
        if self.alpha <= 0.0:
            raise ConfigError("alpha must be positive")
        if not 0.0 < self.tau < 1.0:
            raise ConfigError("tau must lie in (0, 1)")
        if self.learning_rate < 0.0:
            raise ConfigError("learning_rate must be non-negative")
        if self.batch_size < 1:
            raise ConfigError("batch_size must be at least 1")
        if self.buffer_capacity < 1:
            raise ConfigError("buffer_capacity must be at least 1")
        if self.action_samples < 1:
            raise ConfigError("action_samples (R) must be at least 1")
        if not 0.0 < self.xi <= 1.0:
            raise ConfigError("xi must lie in (0, 1]")
        if self.prior_std <= 0.0:
            raise ConfigError("prior_std must be positive")
        if self.total_steps < 0 or self.warmup_steps < 0:
            raise ConfigError("step counts must be non-negative")
        if not self.loss_terms.data_fit:
            raise ConfigError("the data fit term cannot be disabled")
        if self.hidden_width < 1:
            raise ConfigError("hidden_width must be at least 1")
        if self.log_std_min >= self.log_std_max:
            raise ConfigError("log_std_min must be below log_std_max")

    def with_changes(self, **changes: Any) -> "TrainingConfig":
        return replace(self, **changes)


@dataclass(frozen=True, slots=True)
class StepReport:
    """Outcome of one environment interaction and the update that followed it."""

    step: int
    episode: int
    reward: float
    terminal: bool
    truncated: bool
    updated: bool = False
    critic_loss: float | None = None
    actor_loss: float | None = None
    kl: float | None = None
    variance: float | None = None
    episode_reward: float | None = None
    episode_length: int | None = None

    @property
    def episode_finished(self) -> bool:
        return self.terminal or self.truncated


@dataclass(frozen=True, slots=True)
class EpisodeLog:
    seed: int
    episode: int
    env_step: int
    reward: float
    length: int


@dataclass(frozen=True, slots=True)
class SeedMetrics:
    auc: float
    highest: float


@dataclass(frozen=True, slots=True)
class AggregateMetrics:
    auc_mean: float
    auc_sd: float
    highest_mean: float
    highest_sd: float


@dataclass(frozen=True, slots=True)
class MetricsReport:
    algorithm: Algorithm
    env: str
    per_seed: dict[int, SeedMetrics]
    aggregate: AggregateMetrics

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "algo": str(self.algorithm),
            "env": self.env,
            "per_seed": {
                str(seed): {"auc": m.auc, "highest": m.highest}
                for seed, m in self.per_seed.items()
            },
            "aggregate": {
                "auc_mean": self.aggregate.auc_mean,
                "auc_sd": self.aggregate.auc_sd,
                "highest_mean": self.aggregate.highest_mean,
                "highest_sd": self.aggregate.highest_sd,
            },
        }
