from collections.abc import Callable

from pac4sac.domain import EnvSpec, UsageError
from pac4sac.envs.base import Environment
from pac4sac.envs.cartpole import CartpoleSwingupEnv
from pac4sac.envs.pendulum import PendulumEnv

EnvFactory = Callable[[], Environment]


class EnvRegistry:
    """Registry mapping environment names to factories."""

    def __init__(self) -> None:
        self._factories: dict[str, EnvFactory] = {}

    def register(self, name: str, factory: EnvFactory) -> None:
        self._factories[name] = factory

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._factories)

    def create(self, name: str) -> Environment:
        try:
            factory = self._factories[name]
        except KeyError:
            known = ", ".join(sorted(self._factories))
            raise UsageError(f"unknown environment {name!r} (known: {known})") from None
        return factory()


def default_registry() -> EnvRegistry:
    registry = EnvRegistry()
    registry.register("pendulum", PendulumEnv)
    registry.register("cartpole-swingup", CartpoleSwingupEnv)
    return registry


def make_env(name: str) -> Environment:
    return default_registry().create(name)


def env_spec(name: str) -> EnvSpec:
    return make_env(name).spec
