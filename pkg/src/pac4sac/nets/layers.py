import math

import numpy as np

from pac4sac.diffmath import DiffArray, ops
from pac4sac.domain import ContractError, DimensionError


def _fan_in_uniform(rng: np.random.Generator, fan_in: int, shape: tuple[int, ...]) -> DiffArray:
    bound = 1.0 / math.sqrt(fan_in)
    return DiffArray(rng.uniform(-bound, bound, size=shape))


class Linear:
    def __init__(self, in_features: int, out_features: int, rng: np.random.Generator) -> None:
        self.in_features = in_features
        self.out_features = out_features
        self.weight = _fan_in_uniform(rng, in_features, (in_features, out_features))
        self.bias = _fan_in_uniform(rng, in_features, (out_features,))

    def __call__(self, x: DiffArray) -> DiffArray:
        return ops.add(ops.matmul(x, self.weight), self.bias)

    def parameters(self) -> dict[str, DiffArray]:
        return {"weight": self.weight, "bias": self.bias}


class LayerNorm:
    def __init__(self, width: int, eps: float = ops.LAYER_NORM_EPS, affine: bool = True) -> None:
        self.width = width
        self.eps = eps
        self.affine = affine
        self.gain = DiffArray(np.ones(width))
        self.bias = DiffArray(np.zeros(width))

    def __call__(self, x: DiffArray) -> DiffArray:
        out = ops.layer_norm(x, self.eps)
        if self.affine:
            out = ops.add(ops.mul(out, self.gain), self.bias)
        return out

    def parameters(self) -> dict[str, DiffArray]:
        if not self.affine:
            return {}
        return {"gain": self.gain, "bias": self.bias}


class GaussianLinearLayer:
    """Fully connected layer whose weights and biases follow independent normals.

    The posterior is parameterized by a mean and a log-std per weight; the prior is a
    zero-mean normal with standard deviation ``prior_std`` on every weight.
    """

    def __init__(
        self,
        in_features: int,
        out_features: int,
        rng: np.random.Generator,
        prior_std: float = 1.0,
        init_log_std: float = -5.0,
    ) -> None:
        if prior_std <= 0.0:
            raise ContractError("prior_std must be positive")
        self.in_features = in_features
        self.out_features = out_features
        self.prior_std = prior_std
        self.weight_mean = _fan_in_uniform(rng, in_features, (in_features, out_features))
        self.weight_log_std = DiffArray(np.full((in_features, out_features), init_log_std))
        self.bias_mean = _fan_in_uniform(rng, in_features, (out_features,))
        self.bias_log_std = DiffArray(np.full((out_features,), init_log_std))

    @property
    def weight_count(self) -> int:
        return self.in_features * self.out_features + self.out_features

    def parameters(self) -> dict[str, DiffArray]:
        return {
            "weight_mean": self.weight_mean,
            "weight_log_std": self.weight_log_std,
            "bias_mean": self.bias_mean,
            "bias_log_std": self.bias_log_std,
        }

    def forward_mean(self, x: DiffArray) -> DiffArray:
        return ops.add(ops.matmul(x, self.weight_mean), self.bias_mean)

    def forward_sampled(self, x: DiffArray, noise: np.ndarray) -> DiffArray:
        """Apply reparameterized weights ``mean + exp(log_std) * noise``.

        ``noise`` of shape ``(weight_count,)`` is one draw shared by every row;
        shape ``(batch, weight_count)`` gives each row its own draw.
        """
        n_in, n_out = self.in_features, self.out_features
        split = n_in * n_out
        if noise.shape[-1] != self.weight_count or noise.ndim not in (1, 2):
            raise DimensionError("weight noise shape", noise.shape, (self.weight_count,))
        weight_std = ops.exp(self.weight_log_std)
        bias_std = ops.exp(self.bias_log_std)

        if noise.ndim == 1:
            weight = ops.add(
                self.weight_mean, ops.mul(weight_std, noise[:split].reshape(n_in, n_out))
            )
            bias = ops.add(self.bias_mean, ops.mul(bias_std, noise[split:]))
            return ops.add(ops.matmul(x, weight), bias)

        batch = noise.shape[0]
        if x.shape[0] != batch:
            raise DimensionError("weight noise rows must match the batch", x.shape, noise.shape)
        weight = ops.add(
            ops.reshape(self.weight_mean, (1, n_in, n_out)),
            ops.mul(
                ops.reshape(weight_std, (1, n_in, n_out)),
                noise[:, :split].reshape(batch, n_in, n_out),
            ),
        )
        rows = ops.sum(ops.mul(ops.reshape(x, (batch, n_in, 1)), weight), axis=1)
        bias = ops.add(self.bias_mean, ops.mul(bias_std, noise[:, split:]))
        return ops.add(rows, bias)

    def kl_divergence(self) -> DiffArray:
        """Closed-form KL(q || p0) summed over every weight and bias."""
        total: DiffArray | None = None
        var0 = self.prior_std**2
        for mean, log_std in (
            (self.weight_mean, self.weight_log_std),
            (self.bias_mean, self.bias_log_std),
        ):
            variance = ops.exp(ops.mul(log_std, 2.0))
            term = ops.sub(
                ops.add(
                    ops.sub(math.log(self.prior_std), log_std),
                    ops.divide(ops.add(variance, ops.square(mean)), 2.0 * var0),
                ),
                0.5,
            )
            part = ops.sum(term)
            total = part if total is None else ops.add(total, part)
        assert total is not None
        return total


def kl_to_prior(layer: GaussianLinearLayer) -> float:
    return layer.kl_divergence().item()
