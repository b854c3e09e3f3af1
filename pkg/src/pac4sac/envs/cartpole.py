"""Cart-pole swing-up: the pole starts hanging and is rewarded by ``cos theta``."""

import numpy as np

from pac4sac.domain import ContractError, EnvSpec, FloatArray
from pac4sac.envs.base import StepResult, scalar_action, wrap_angle

GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
TOTAL_MASS = CART_MASS + POLE_MASS
HALF_LENGTH = 0.5
POLE_MASS_LENGTH = POLE_MASS * HALF_LENGTH
FORCE_MAG = 10.0
DT = 0.02
X_LIMIT = 2.4
MAX_CART_SPEED = 10.0
MAX_POLE_SPEED = 25.0
MAX_EPISODE_STEPS = 500

CARTPOLE_SWINGUP_SPEC = EnvSpec(
    name="cartpole-swingup",
    state_dim=5,
    action_dim=1,
    action_low=(-1.0,),
    action_high=(1.0,),
    r_min=-1.0,
    r_max=1.0,
    max_episode_steps=MAX_EPISODE_STEPS,
    default_steps=30_000,
)


class CartpoleSwingupEnv:
    """Observations are ``(x, x_dot, cos theta, sin theta, theta_dot)``; angle 0 is upright."""

    def __init__(self) -> None:
        self._x = 0.0
        self._x_dot = 0.0
        self._theta = np.pi
        self._theta_dot = 0.0
        self._steps = 0
        self._ready = False

    @property
    def spec(self) -> EnvSpec:
        return CARTPOLE_SWINGUP_SPEC

    @property
    def state(self) -> tuple[float, float, float, float]:
        return self._x, self._x_dot, self._theta, self._theta_dot

    def reset(self, rng: np.random.Generator) -> FloatArray:
        self._x = 0.0
        self._x_dot = 0.0
        self._theta = wrap_angle(np.pi + float(rng.uniform(-0.05, 0.05)))
        self._theta_dot = float(rng.uniform(-0.05, 0.05))
        self._steps = 0
        self._ready = True
        return self._observation()

    def reset_to(self, x: float, x_dot: float, theta: float, theta_dot: float) -> FloatArray:
        self._x, self._x_dot = x, x_dot
        self._theta, self._theta_dot = wrap_angle(theta), theta_dot
        self._steps = 0
        self._ready = True
        return self._observation()

    def step(self, action: FloatArray) -> StepResult:
        if not self._ready:
            raise ContractError("cartpole episode is over; call reset() first")
        u = scalar_action(action, -1.0, 1.0)
        force = FORCE_MAG * u
        cos_t, sin_t = np.cos(self._theta), np.sin(self._theta)

        temp = (force + POLE_MASS_LENGTH * self._theta_dot**2 * sin_t) / TOTAL_MASS
        theta_acc = (GRAVITY * sin_t - cos_t * temp) / (
            HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos_t**2 / TOTAL_MASS)
        )
        x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos_t / TOTAL_MASS

        self._x += DT * self._x_dot
        self._x_dot = float(np.clip(self._x_dot + DT * x_acc, -MAX_CART_SPEED, MAX_CART_SPEED))
        self._theta = wrap_angle(self._theta + DT * self._theta_dot)
        self._theta_dot = float(
            np.clip(self._theta_dot + DT * theta_acc, -MAX_POLE_SPEED, MAX_POLE_SPEED)
        )
        self._steps += 1

        terminal = abs(self._x) > X_LIMIT
        truncated = not terminal and self._steps >= MAX_EPISODE_STEPS
        if terminal or truncated:
            self._ready = False
        reward = float(np.cos(self._theta))
        return StepResult(self._observation(), reward, terminal=terminal, truncated=truncated)

    def _observation(self) -> FloatArray:
        return np.array(
            [self._x, self._x_dot, np.cos(self._theta), np.sin(self._theta), self._theta_dot]
        )
