"""Torque-limited pendulum swing-up with the classic-control dynamics."""

import numpy as np

from pac4sac.domain import ContractError, EnvSpec, FloatArray
from pac4sac.envs.base import StepResult, scalar_action, wrap_angle

MAX_SPEED = 8.0
MAX_TORQUE = 2.0
DT = 0.05
GRAVITY = 10.0
MASS = 1.0
LENGTH = 1.0
MAX_EPISODE_STEPS = 200

PENDULUM_SPEC = EnvSpec(
    name="pendulum",
    state_dim=3,
    action_dim=1,
    action_low=(-MAX_TORQUE,),
    action_high=(MAX_TORQUE,),
    r_min=-(np.pi**2 + 0.1 * MAX_SPEED**2 + 0.001 * MAX_TORQUE**2),
    r_max=0.0,
    max_episode_steps=MAX_EPISODE_STEPS,
    default_steps=10_000,
)


class PendulumEnv:
    """Angle 0 is upright. Observations are ``(cos theta, sin theta, theta_dot)``."""

    def __init__(self) -> None:
        self._theta = 0.0
        self._theta_dot = 0.0
        self._steps = 0
        self._ready = False

    @property
    def spec(self) -> EnvSpec:
        return PENDULUM_SPEC

    @property
    def state(self) -> tuple[float, float]:
        return self._theta, self._theta_dot

    @property
    def steps(self) -> int:
        return self._steps

    def reset(self, rng: np.random.Generator) -> FloatArray:
        self._theta = float(rng.uniform(-np.pi, np.pi))
        self._theta_dot = float(rng.uniform(-1.0, 1.0))
        self._steps = 0
        self._ready = True
        return self._observation()

    def reset_to(self, theta: float, theta_dot: float) -> FloatArray:
        self._theta = theta
        self._theta_dot = theta_dot
        self._steps = 0
        self._ready = True
        return self._observation()

    def step(self, action: FloatArray) -> StepResult:
        if not self._ready:
            raise ContractError("pendulum episode is over; call reset() first")
        u = scalar_action(action, -MAX_TORQUE, MAX_TORQUE)
        theta, theta_dot = self._theta, self._theta_dot
        reward = -(wrap_angle(theta) ** 2 + 0.1 * theta_dot**2 + 0.001 * u**2)

        theta_ddot = 3.0 * GRAVITY / (2.0 * LENGTH) * np.sin(theta) + 3.0 / (MASS * LENGTH**2) * u
        new_theta_dot = float(np.clip(theta_dot + theta_ddot * DT, -MAX_SPEED, MAX_SPEED))
        self._theta = wrap_angle(theta + new_theta_dot * DT)
        self._theta_dot = new_theta_dot
        self._steps += 1

        truncated = self._steps >= MAX_EPISODE_STEPS
        if truncated:
            self._ready = False
        return StepResult(self._observation(), float(reward), terminal=False, truncated=truncated)

    def _observation(self) -> FloatArray:
        return np.array([np.cos(self._theta), np.sin(self._theta), self._theta_dot])
