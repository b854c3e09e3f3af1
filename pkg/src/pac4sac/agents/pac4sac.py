"""Actor-critic with a Gaussian-weight critic trained on a PAC-Bayes objective."""

import copy
import logging

from pac4sac.agents.base import AgentState, UpdateReport, build_agent_state
from pac4sac.agents.losses import (
    empirical_variance,
    pac_critic_loss,
    policy_improvement_loss,
    polyak_update,
    soft_bellman_target,
)
from pac4sac.agents.optim import Adam
from pac4sac.agents.search import select_action_random_search
from pac4sac.agents.streams import SeedStreams
from pac4sac.diffmath import Tape
from pac4sac.domain import Algorithm, EnvSpec, FloatArray, TrainingConfig
from pac4sac.nets import CriticNet, Module, SquashedGaussianPolicy
from pac4sac.replay import ReplayBuffer

logger = logging.getLogger(__name__)


class Pac4SacAgent:
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
        self.critic = CriticNet(
            env.state_dim,
            env.action_dim,
            streams.init,
            probabilistic=True,
            width=config.hidden_width,
            prior_std=config.prior_std,
            init_log_std=config.posterior_init_log_std,
            layer_norm_affine=config.layer_norm_affine,
            layer_norm_eps=config.layer_norm_eps,
        )
        self.target_critic = copy.deepcopy(self.critic)
        self.actor_optimizer = Adam(self.actor.parameters(), config.learning_rate)
        self.critic_optimizer = Adam(self.critic.parameters(), config.learning_rate)

    @property
    def algorithm(self) -> Algorithm:
        return Algorithm.PAC4SAC

    def act(self, state: FloatArray) -> FloatArray:
        return select_action_random_search(
            state,
            self.actor,
            self.critic,
            self.config.action_samples,
            self.streams.actor_noise,
            self.streams.critic_noise,
        )

    def update(self, buffer: ReplayBuffer) -> UpdateReport:
        cfg = self.config
        batch = buffer.sample(cfg.batch_size, self.streams.buffer)
        targets = soft_bellman_target(
            batch,
            self.actor,
            self.target_critic,
            cfg.alpha,
            cfg.gamma,
            self.streams.actor_noise,
            self.streams.critic_noise,
        )

        with Tape() as tape:
            tape.watch(*self.critic_optimizer.parameters.values())
            self.critic_optimizer.zero_grad()
            q = self.critic.evaluate(batch.states, batch.actions, self.streams.critic_noise)
            kl = self.critic.kl_divergence()
            critic_loss = pac_critic_loss(
                q, targets, kl, len(buffer), cfg.gamma, cfg.xi, cfg.loss_terms
            )
            tape.backward(critic_loss)
            variance = empirical_variance(q.detach()).item()
        self.critic_optimizer.step()

        with Tape() as tape:
            tape.watch(*self.actor_optimizer.parameters.values())
            self.actor_optimizer.zero_grad()
            actor_loss = policy_improvement_loss(
                batch.states,
                self.actor,
                self.critic,
                cfg.alpha,
                self.streams.actor_noise,
                self.streams.critic_noise,
                entropy_term=cfg.policy_entropy_term,
            )
            tape.backward(actor_loss)
        self.actor_optimizer.step()

        polyak_update(self.target_critic, self.critic, cfg.tau)
        logger.debug(
            "critic loss %.5f, actor loss %.5f, kl %.3f, variance %.5f",
            critic_loss.item(),
            actor_loss.item(),
            kl.item(),
            variance,
        )
        return UpdateReport(
            critic_loss=critic_loss.item(),
            actor_loss=actor_loss.item(),
            kl=kl.item(),
            variance=variance,
        )

    def modules(self) -> dict[str, Module]:
        return {"actor": self.actor, "critic": self.critic, "target_critic": self.target_critic}

    def snapshot(self, env_steps: int) -> AgentState:
        return build_agent_state(
            self.modules(),
            {"actor": self.actor_optimizer, "critic": self.critic_optimizer},
            env_steps,
        )
