"""Actor and critic architectures."""

from pac4sac.nets.base import (
    Module,
    StochasticActor,
    ValueEstimator,
    copy_parameters,
    parameter_count,
)
from pac4sac.nets.checkpoint import (
    decode_parameters,
    encode_parameters,
    load_checkpoint,
    save_checkpoint,
)
from pac4sac.nets.critic import CriticNet, critic_forward_sampled
from pac4sac.nets.layers import GaussianLinearLayer, LayerNorm, Linear, kl_to_prior
from pac4sac.nets.policy import SquashedGaussianPolicy, actor_sample
from pac4sac.nets.trunk import MlpTrunk, trunk_parameter_count

__all__ = [
    "Module",
    "StochasticActor",
    "ValueEstimator",
    "copy_parameters",
    "parameter_count",
    "decode_parameters",
    "encode_parameters",
    "load_checkpoint",
    "save_checkpoint",
    "CriticNet",
    "critic_forward_sampled",
    "GaussianLinearLayer",
    "LayerNorm",
    "Linear",
    "kl_to_prior",
    "SquashedGaussianPolicy",
    "actor_sample",
    "MlpTrunk",
    "trunk_parameter_count",
]
