from pac4sac.envs.base import Environment, StepResult, wrap_angle
from pac4sac.envs.cartpole import CARTPOLE_SWINGUP_SPEC, CartpoleSwingupEnv
from pac4sac.envs.pendulum import PENDULUM_SPEC, PendulumEnv
from pac4sac.envs.registry import EnvRegistry, default_registry, env_spec, make_env

__all__ = [
    "Environment",
    "StepResult",
    "wrap_angle",
    "CARTPOLE_SWINGUP_SPEC",
    "CartpoleSwingupEnv",
    "PENDULUM_SPEC",
    "PendulumEnv",
    "EnvRegistry",
    "default_registry",
    "env_spec",
    "make_env",
]
