from typing import Any

import numpy as np

from pac4sac.diffmath import DiffArray, ops
from pac4sac.domain import ContractError, DimensionError
from pac4sac.nets.base import prefixed
from pac4sac.nets.layers import GaussianLinearLayer, Linear
from pac4sac.nets.trunk import MlpTrunk


class CriticNet:
    """State-action value network with a plain or a Gaussian-weight output head."""

    def __init__(
        self,
        state_dim: int,
        action_dim: int,
        rng: np.random.Generator,
        probabilistic: bool,
        width: int = 256,
        prior_std: float = 1.0,
        init_log_std: float = -5.0,
        layer_norm_affine: bool = True,
        layer_norm_eps: float = ops.LAYER_NORM_EPS,
    ) -> None:
        self.state_dim = state_dim
        self.action_dim = action_dim
        self.trunk = MlpTrunk(
            state_dim + action_dim,
            rng,
            width=width,
            layer_norm_affine=layer_norm_affine,
            layer_norm_eps=layer_norm_eps,
        )
        self.head: Linear | GaussianLinearLayer
        if probabilistic:
            self.head = GaussianLinearLayer(
                width, 1, rng, prior_std=prior_std, init_log_std=init_log_std
            )
        else:
            self.head = Linear(width, 1, rng)

    @property
    def probabilistic(self) -> bool:
        return isinstance(self.head, GaussianLinearLayer)

    @property
    def weight_count(self) -> int:
        """Number of standard normals one head weight draw consumes."""
        return self._gaussian_head().weight_count

    def parameters(self) -> dict[str, DiffArray]:
        return {
            **prefixed("trunk", self.trunk.parameters()),
            **prefixed("head", self.head.parameters()),
        }

    def _features(self, state: Any, action: Any) -> DiffArray:
        s, a = ops.as_array(state), ops.as_array(action)
        if s.values.ndim != 2 or a.values.ndim != 2 or s.shape[0] != a.shape[0]:
            raise DimensionError("critic state/action batch", s.shape, a.shape)
        if s.shape[1] != self.state_dim or a.shape[1] != self.action_dim:
            raise DimensionError("critic input widths", s.shape, a.shape)
        return self.trunk(ops.concat([s, a], axis=1))

    def _gaussian_head(self) -> GaussianLinearLayer:
        if not isinstance(self.head, GaussianLinearLayer):
            raise ContractError("critic has a deterministic head; use forward()")
        return self.head

    def forward(self, state: Any, action: Any) -> DiffArray:
        """Value under the head's mean weights, shape ``[batch]``."""
        h = self._features(state, action)
        if isinstance(self.head, GaussianLinearLayer):
            out = self.head.forward_mean(h)
        else:
            out = self.head(h)
        return ops.reshape(out, (out.shape[0],))

    def forward_sampled(self, state: Any, action: Any, noise: np.ndarray) -> DiffArray:
        head = self._gaussian_head()
        out = head.forward_sampled(self._features(state, action), noise)
        return ops.reshape(out, (out.shape[0],))

    def evaluate(self, state: Any, action: Any, rng: np.random.Generator) -> DiffArray:
        """One independent weight draw per batch row; deterministic heads ignore ``rng``."""
        if not self.probabilistic:
            return self.forward(state, action)
        batch = ops.as_array(state).shape[0]
        return self.forward_sampled(state, action, rng.standard_normal((batch, self.weight_count)))

    def kl_divergence(self) -> DiffArray:
        return self._gaussian_head().kl_divergence()


def critic_forward_sampled(
    critic: CriticNet, state: Any, action: Any, noise: np.ndarray
) -> DiffArray:
    return critic.forward_sampled(state, action, noise)
