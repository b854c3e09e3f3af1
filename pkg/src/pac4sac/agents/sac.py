"""Twin-critic soft actor-critic baseline."""

import copy
import logging
from typing import Any

import numpy as np

from pac4sac.agents.base import AgentState, UpdateReport, build_agent_state
from pac4sac.agents.losses import policy_improvement_loss, polyak_update, soft_bellman_target
from pac4sac.agents.optim import Adam
from pac4sac.agents.streams import SeedStreams
from pac4sac.diffmath import DiffArray, Tape, ops
from pac4sac.domain import Algorithm, EnvSpec, FloatArray, TrainingConfig
from pac4sac.nets import CriticNet, Module, SquashedGaussianPolicy
from pac4sac.nets.base import prefixed
from pac4sac.replay import ReplayBuffer

logger = logging.getLogger(__name__)


class TwinCritic:
    """Elementwise minimum of two deterministic critics."""

    def __init__(self, first: CriticNet, second: CriticNet) -> None:
        self.first = first
        self.second = second

    def parameters(self) -> dict[str, DiffArray]:
        return {
            **prefixed("q1", self.first.parameters()),
            **prefixed("q2", self.second.parameters()),
        }

    def evaluate(self, state: Any, action: Any, rng: np.random.Generator) -> DiffArray:
        return ops.minimum(self.first.forward(state, action), self.second.forward(state, action))


class SacAgent:
    def __init__(self, env: EnvSpec, config: TrainingConfig, streams: SeedStreams) -> None:
        config.validate()
        self.config = config
        self.streams = streams
        self.actor = SquashedGaussianPolicy(
            env,
            streams.init,
            width=config.hidden_width,
            log_std_min=config.log_std_min,
            log_std_max=config.log_std_max,
            layer_norm_affine=config.layer_norm_affine,
            layer_norm_eps=config.layer_norm_eps,
        )
        self.critics = TwinCritic(self._make_critic(env), self._make_critic(env))
        self.target_critics = copy.deepcopy(self.critics)
        self.actor_optimizer = Adam(self.actor.parameters(), config.learning_rate)
        self.critic_optimizer = Adam(self.critics.parameters(), config.learning_rate)

    def _make_critic(self, env: EnvSpec) -> CriticNet:
        return CriticNet(
            env.state_dim,
            env.action_dim,
            self.streams.init,
            probabilistic=False,
            width=self.config.hidden_width,
            layer_norm_affine=self.config.layer_norm_affine,
            layer_norm_eps=self.config.layer_norm_eps,
        )

    @property
    def algorithm(self) -> Algorithm:
        return Algorithm.SAC

    def act(self, state: FloatArray) -> FloatArray:
        noise = self.streams.actor_noise.standard_normal((1, self.actor.action_dim))
        action, _ = self.actor.sample(np.asarray(state, dtype=np.float64).reshape(1, -1), noise)
        result: FloatArray = action.values[0].copy()
        return result

    def update(self, buffer: ReplayBuffer) -> UpdateReport:
        cfg = self.config
        batch = buffer.sample(cfg.batch_size, self.streams.buffer)
        targets = soft_bellman_target(
            batch,
            self.actor,
            self.target_critics,
            cfg.alpha,
            cfg.gamma,
            self.streams.actor_noise,
            self.streams.critic_noise,
        )

        with Tape() as tape:
            tape.watch(*self.critic_optimizer.parameters.values())
            self.critic_optimizer.zero_grad()
            critic_loss = ops.add(
                twin_regression_loss(self.critics.first, batch.states, batch.actions, targets),
                twin_regression_loss(self.critics.second, batch.states, batch.actions, targets),
            )
            tape.backward(critic_loss)
        self.critic_optimizer.step()

        with Tape() as tape:
            tape.watch(*self.actor_optimizer.parameters.values())
            self.actor_optimizer.zero_grad()
            actor_loss = policy_improvement_loss(
                batch.states,
                self.actor,
                self.critics,
                cfg.alpha,
                self.streams.actor_noise,
                self.streams.critic_noise,
                entropy_term=cfg.policy_entropy_term,
            )
            tape.backward(actor_loss)
        self.actor_optimizer.step()

        polyak_update(self.target_critics, self.critics, cfg.tau)
        logger.debug("critic loss %.5f, actor loss %.5f", critic_loss.item(), actor_loss.item())
        return UpdateReport(critic_loss=critic_loss.item(), actor_loss=actor_loss.item())

    def modules(self) -> dict[str, Module]:
        return {"actor": self.actor, "critics": self.critics, "target_critics": self.target_critics}

    def snapshot(self, env_steps: int) -> AgentState:
        return build_agent_state(
            self.modules(),
            {"actor": self.actor_optimizer, "critics": self.critic_optimizer},
            env_steps,
        )


def twin_regression_loss(
    critic: CriticNet, states: FloatArray, actions: FloatArray, targets: FloatArray
) -> DiffArray:
    return ops.mean(ops.square(ops.sub(critic.forward(states, actions), targets)))
