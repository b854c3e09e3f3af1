"""Tanh-squashed Gaussian actor."""

import math
from typing import Any

import numpy as np

from pac4sac.diffmath import DiffArray, ops
from pac4sac.domain import DimensionError, EnvSpec, FloatArray
from pac4sac.nets.base import prefixed
from pac4sac.nets.layers import Linear
from pac4sac.nets.trunk import MlpTrunk

SQUASH_EPS = 1e-6
# keeps squashed actions strictly inside the box once tanh saturates in float64
TANH_LIMIT = 1.0 - 1e-9
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


class SquashedGaussianPolicy:
    def __init__(
        self,
        env: EnvSpec,
        rng: np.random.Generator,
        width: int = 256,
        log_std_min: float = -20.0,
        log_std_max: float = 2.0,
        layer_norm_affine: bool = True,
        layer_norm_eps: float = ops.LAYER_NORM_EPS,
    ) -> None:
        self.state_dim = env.state_dim
        self._action_dim = env.action_dim
        self.log_std_min = log_std_min
        self.log_std_max = log_std_max
        self.scale: FloatArray = env.action_scale
        self.offset: FloatArray = env.action_offset
        self.trunk = MlpTrunk(
            env.state_dim,
            rng,
            width=width,
            layer_norm_affine=layer_norm_affine,
            layer_norm_eps=layer_norm_eps,
        )
        self.head = Linear(width, 2 * env.action_dim, rng)

    @property
    def action_dim(self) -> int:
        return self._action_dim

    def parameters(self) -> dict[str, DiffArray]:
        return {
            **prefixed("trunk", self.trunk.parameters()),
            **prefixed("head", self.head.parameters()),
        }

    def distribution(self, state: Any) -> tuple[DiffArray, DiffArray]:
        """Pre-squash mean and clamped log-std, each ``[batch, action_dim]``."""
        x = ops.as_array(state)
        if x.values.ndim != 2 or x.shape[1] != self.state_dim:
            raise DimensionError("policy input", x.shape, (-1, self.state_dim))
        out = self.head(self.trunk(x))
        d = self._action_dim
        mean = ops.take_columns(out, 0, d)
        log_std = ops.clamp(ops.take_columns(out, d, 2 * d), self.log_std_min, self.log_std_max)
        return mean, log_std

    def sample(self, state: Any, noise: np.ndarray) -> tuple[DiffArray, DiffArray]:
        """Reparameterized action and its log-density, ``[batch, action_dim]`` and ``[batch]``."""
        mean, log_std = self.distribution(state)
        if noise.shape != mean.shape:
            raise DimensionError("actor noise", noise.shape, mean.shape)
        pre_squash = ops.add(mean, ops.mul(ops.exp(log_std), noise))
        squashed = ops.clamp(ops.tanh(pre_squash), -TANH_LIMIT, TANH_LIMIT)
        action = ops.add(ops.mul(squashed, self.scale), self.offset)

        gaussian = ops.sum(ops.sub(-0.5 * noise * noise - HALF_LOG_2PI, log_std), axis=1)
        jacobian = ops.log(
            ops.add(ops.mul(ops.sub(1.0, ops.square(squashed)), self.scale), SQUASH_EPS)
        )
        return action, ops.sub(gaussian, ops.sum(jacobian, axis=1))

    def log_prob(self, state: Any, action: FloatArray) -> FloatArray:
        """Density of arbitrary in-box actions, evaluated without recording."""
        mean, log_std = self.distribution(ops.as_array(state).detach())
        unit = (np.asarray(action) - self.offset) / self.scale
        squashed = np.clip(unit, -TANH_LIMIT, TANH_LIMIT)
        pre_squash = np.arctanh(squashed)
        std = np.exp(log_std.values)
        z = (pre_squash - mean.values) / std
        gaussian = np.sum(-0.5 * z * z - log_std.values - HALF_LOG_2PI, axis=1)
        jacobian = np.sum(np.log(self.scale * (1.0 - squashed * squashed) + SQUASH_EPS), axis=1)
        result: FloatArray = gaussian - jacobian
        return result

    def mean_action(self, state: Any) -> FloatArray:
        mean, _ = self.distribution(ops.as_array(state).detach())
        squashed = np.clip(np.tanh(mean.values), -TANH_LIMIT, TANH_LIMIT)
        result: FloatArray = squashed * self.scale + self.offset
        return result


def actor_sample(
    policy: SquashedGaussianPolicy, state: Any, noise: np.ndarray
) -> tuple[DiffArray, DiffArray]:
    return policy.sample(state, noise)
