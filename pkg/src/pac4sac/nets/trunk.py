import numpy as np

from pac4sac.diffmath import DiffArray, ops
from pac4sac.nets.base import prefixed
from pac4sac.nets.layers import LayerNorm, Linear

TRUNK_DEPTH = 3


class MlpTrunk:
    """Stack of ``Linear -> LayerNorm -> SiLU`` blocks shared by the actor and critic."""

    def __init__(
        self,
        in_features: int,
        rng: np.random.Generator,
        width: int = 256,
        depth: int = TRUNK_DEPTH,
        layer_norm_affine: bool = True,
        layer_norm_eps: float = ops.LAYER_NORM_EPS,
    ) -> None:
        self.in_features = in_features
        self.width = width
        self.linears: list[Linear] = []
        self.norms: list[LayerNorm] = []
        fan_in = in_features
        for _ in range(depth):
            self.linears.append(Linear(fan_in, width, rng))
            self.norms.append(LayerNorm(width, eps=layer_norm_eps, affine=layer_norm_affine))
            fan_in = width

    def __call__(self, x: DiffArray) -> DiffArray:
        for linear, norm in zip(self.linears, self.norms, strict=True):
            x = ops.silu(norm(linear(x)))
        return x

    def parameters(self) -> dict[str, DiffArray]:
        params: dict[str, DiffArray] = {}
        for i, (linear, norm) in enumerate(zip(self.linears, self.norms, strict=True)):
            params.update(prefixed(f"linear{i}", linear.parameters()))
            params.update(prefixed(f"norm{i}", norm.parameters()))
        return params


def trunk_parameter_count(
    in_features: int, width: int = 256, depth: int = TRUNK_DEPTH, affine: bool = True
) -> int:
    linear = (in_features + 1) * width + (depth - 1) * (width + 1) * width
    norm = 2 * width * depth if affine else 0
    return linear + norm
