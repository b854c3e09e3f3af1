from collections.abc import Mapping
from typing import Any, Protocol, runtime_checkable

import numpy as np

from pac4sac.diffmath import DiffArray
from pac4sac.domain import ContractError


@runtime_checkable
class Module(Protocol):
    """Anything that owns named trainable arrays."""

    def parameters(self) -> dict[str, DiffArray]:
        ...


@runtime_checkable
class ValueEstimator(Protocol):
    """State-action value estimate, drawing any weight noise it needs from ``rng``."""

    def evaluate(self, state: Any, action: Any, rng: np.random.Generator) -> DiffArray:
        ...


@runtime_checkable
class StochasticActor(Protocol):
    @property
    def action_dim(self) -> int:
        ...

    def sample(self, state: Any, noise: np.ndarray) -> tuple[DiffArray, DiffArray]:
        ...


def prefixed(prefix: str, params: Mapping[str, DiffArray]) -> dict[str, DiffArray]:
    return {f"{prefix}.{name}": array for name, array in params.items()}


def parameter_count(module: Module) -> int:
    return sum(array.size for array in module.parameters().values())


def copy_parameters(target: Module, source: Module) -> None:
    """Overwrite ``target`` parameter values with ``source``'s, in place."""
    dst, src = target.parameters(), source.parameters()
    if dst.keys() != src.keys():
        raise ContractError("modules expose different parameter names")
    for name, array in dst.items():
        if array.shape != src[name].shape:
            raise ContractError(f"shape mismatch for {name}: {array.shape} vs {src[name].shape}")
        array.values[...] = src[name].values
