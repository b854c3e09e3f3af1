from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from pac4sac.domain import EnvSpec, FloatArray


@dataclass(frozen=True, slots=True, eq=False)
class StepResult:
    observation: FloatArray
    reward: float
    terminal: bool
    truncated: bool

    @property
    def done(self) -> bool:
        return self.terminal or self.truncated


@runtime_checkable
class Environment(Protocol):
    """Protocol for seeded continuous-control environments."""

    @property
    def spec(self) -> EnvSpec:
        ...

    def reset(self, rng: np.random.Generator) -> FloatArray:
        ...

    def step(self, action: FloatArray) -> StepResult:
        ...


def wrap_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    return float(np.pi - np.mod(np.pi - theta, 2.0 * np.pi))


def scalar_action(action: FloatArray, low: float, high: float) -> float:
    """First action component, clipped into the box."""
    return float(np.clip(np.asarray(action, dtype=np.float64).reshape(-1)[0], low, high))
