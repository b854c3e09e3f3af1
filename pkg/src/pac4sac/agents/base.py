from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from pac4sac.agents.optim import Adam
from pac4sac.domain import Algorithm, FloatArray
from pac4sac.nets import Module
from pac4sac.replay import ReplayBuffer


@dataclass(frozen=True, slots=True)
class UpdateReport:
    critic_loss: float
    actor_loss: float
    kl: float | None = None
    variance: float | None = None


@dataclass(frozen=True, slots=True)
class AgentState:
    """Copied parameter values and optimizer moments of an agent."""

    parameters: dict[str, FloatArray]
    first_moments: dict[str, FloatArray]
    second_moments: dict[str, FloatArray]
    optimizer_steps: int
    env_steps: int


@runtime_checkable
class Agent(Protocol):
    """Protocol for actor-critic learners driven by ``TrainingLoop``."""

    @property
    def algorithm(self) -> Algorithm:
        ...

    def act(self, state: FloatArray) -> FloatArray:
        ...

    def update(self, buffer: ReplayBuffer) -> UpdateReport:
        ...

    def modules(self) -> dict[str, Module]:
        ...

    def snapshot(self, env_steps: int) -> AgentState:
        ...


def snapshot_modules(modules: dict[str, Module]) -> dict[str, FloatArray]:
    return {
        f"{prefix}.{name}": array.values.copy()
        for prefix, module in modules.items()
        for name, array in module.parameters().items()
    }


def build_agent_state(
    modules: dict[str, Module], optimizers: dict[str, Adam], env_steps: int
) -> AgentState:
    first: dict[str, FloatArray] = {}
    second: dict[str, FloatArray] = {}
    steps = 0
    for prefix, optimizer in optimizers.items():
        state = optimizer.state()
        first.update({f"{prefix}.{k}": v for k, v in state.first_moments.items()})
        second.update({f"{prefix}.{k}": v for k, v in state.second_moments.items()})
        steps = max(steps, state.step)
    return AgentState(
        parameters=snapshot_modules(modules),
        first_moments=first,
        second_moments=second,
        optimizer_steps=steps,
        env_steps=env_steps,
    )
