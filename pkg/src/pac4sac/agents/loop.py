from __future__ import annotations

import logging
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing_extensions import Self

import numpy as np

from pac4sac.agents.base import Agent, AgentState
from pac4sac.agents.streams import SeedStreams
from pac4sac.domain import (
    Algorithm,
    ContractError,
    FloatArray,
    StepReport,
    TrainingConfig,
    Transition,
)
from pac4sac.envs import Environment
from pac4sac.replay import ReplayBuffer

logger = logging.getLogger(__name__)


class TrainingLoop:
    """Async source of ``StepReport``s: one environment interaction per item.

    The first ``warmup_steps`` interactions use uniform random actions and skip
    updates; every later interaction is followed by exactly one agent update.
    """

    def __init__(
        self,
        agent: Agent,
        env: Environment,
        config: TrainingConfig,
        streams: SeedStreams,
        buffer: ReplayBuffer | None = None,
    ) -> None:
        self.agent = agent
        self.env = env
        self.config = config
        self.streams = streams
        spec = env.spec
        if buffer is None:
            buffer = ReplayBuffer(config.buffer_capacity, spec.state_dim, spec.action_dim)
        self.buffer = buffer
        self._low = np.asarray(spec.action_low, dtype=np.float64)
        self._high = np.asarray(spec.action_high, dtype=np.float64)
        self._state: FloatArray | None = None
        self._step = 0
        self._episode = 0
        self._episode_reward = 0.0
        self._episode_length = 0

    @property
    def step_count(self) -> int:
        return self._step

    @property
    def finished(self) -> bool:
        return self._step >= self.config.total_steps

    def __aiter__(self) -> Self:
        return self

    async def __anext__(self) -> StepReport:
        if self.finished:
            raise StopAsyncIteration
        return self.step()

    def step(self) -> StepReport:
        if self._state is None:
            self._state = self.env.reset(self.streams.env)
        state = self._state
        warming_up = self._step < self.config.warmup_steps
        if warming_up:
            action = self.streams.warmup.uniform(self._low, self._high)
        else:
            action = self.agent.act(state)

        result = self.env.step(action)
        self.buffer.push(
            Transition(state, action, result.reward, result.observation, result.terminal)
        )
        update = None if warming_up else self.agent.update(self.buffer)

        self._step += 1
        self._episode_reward += result.reward
        self._episode_length += 1
        report = StepReport(
            step=self._step,
            episode=self._episode,
            reward=result.reward,
            terminal=result.terminal,
            truncated=result.truncated,
            updated=update is not None,
            critic_loss=update.critic_loss if update else None,
            actor_loss=update.actor_loss if update else None,
            kl=update.kl if update else None,
            variance=update.variance if update else None,
            episode_reward=self._episode_reward if result.done else None,
            episode_length=self._episode_length if result.done else None,
        )
        if result.done:
            logger.debug(
                "episode %d finished at step %d: reward %.3f over %d steps",
                self._episode,
                self._step,
                self._episode_reward,
                self._episode_length,
            )
            self._state = None
            self._episode += 1
            self._episode_reward = 0.0
            self._episode_length = 0
        else:
            self._state = result.observation
        return report

    def snapshot(self) -> AgentState:
        return self.agent.snapshot(self._step)


def _step_as(loop: TrainingLoop, algorithm: Algorithm) -> StepReport:
    if loop.agent.algorithm is not algorithm:
        raise ContractError(f"loop drives a {loop.agent.algorithm} agent, not {algorithm}")
    return loop.step()


def train_step(loop: TrainingLoop) -> StepReport:
    """Advance a PAC4SAC run by one interaction and its update."""
    return _step_as(loop, Algorithm.PAC4SAC)


def sac_baseline_step(loop: TrainingLoop) -> StepReport:
    return _step_as(loop, Algorithm.SAC)
