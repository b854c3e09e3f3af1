"""Explicit finite MDPs and tabular policies."""

from dataclasses import dataclass
from typing import Any

import numpy as np

from pac4sac.domain import ContractError, DimensionError, FloatArray

STOCHASTIC_TOLERANCE = 1e-12


def _require_row_stochastic(table: FloatArray, what: str) -> None:
    if np.any(table < 0.0):
        raise ContractError(f"{what} has negative probabilities")
    worst = float(np.max(np.abs(table.sum(axis=-1) - 1.0), initial=0.0))
    if worst > STOCHASTIC_TOLERANCE:
        raise ContractError(f"{what} rows do not sum to 1 (worst deviation {worst:.3e})")


@dataclass(frozen=True, slots=True, eq=False)
class FiniteMDP:
    """``transitions[s, a, s']`` and ``rewards[s, a]`` with discount ``gamma``."""

    transitions: FloatArray
    rewards: FloatArray
    gamma: float

    def __post_init__(self) -> None:
        if self.transitions.ndim != 3 or self.transitions.shape[0] != self.transitions.shape[2]:
            raise DimensionError("transition tensor must be [S, A, S]", self.transitions.shape)
        if self.rewards.shape != self.transitions.shape[:2]:
            raise DimensionError(
                "reward table must be [S, A]", self.rewards.shape, self.transitions.shape[:2]
            )

    @property
    def n_states(self) -> int:
        return int(self.transitions.shape[0])

    @property
    def n_actions(self) -> int:
        return int(self.transitions.shape[1])

    @property
    def r_min(self) -> float:
        return float(self.rewards.min())

    @property
    def r_max(self) -> float:
        return float(self.rewards.max())

    def validate(self) -> None:
        if not 0.0 <= self.gamma < 1.0:
            raise ContractError(f"discount must lie in [0, 1), got {self.gamma}")
        _require_row_stochastic(self.transitions, "transition tensor")

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "transitions": self.transitions.tolist(),
            "rewards": self.rewards.tolist(),
            "gamma": self.gamma,
        }

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> "FiniteMDP":
        return cls(
            transitions=np.asarray(data["transitions"], dtype=np.float64),
            rewards=np.asarray(data["rewards"], dtype=np.float64),
            gamma=float(data["gamma"]),
        )


@dataclass(frozen=True, slots=True, eq=False)
class TabularPolicy:
    probs: FloatArray

    def __post_init__(self) -> None:
        if self.probs.ndim != 2:
            raise DimensionError("policy table must be [S, A]", self.probs.shape)

    @property
    def n_states(self) -> int:
        return int(self.probs.shape[0])

    @property
    def n_actions(self) -> int:
        return int(self.probs.shape[1])

    def validate(self, mdp: FiniteMDP | None = None) -> None:
        _require_row_stochastic(self.probs, "policy")
        if mdp is not None and self.probs.shape != mdp.rewards.shape:
            raise DimensionError(
                "policy does not match the MDP", self.probs.shape, mdp.rewards.shape
            )

    def entropy(self) -> FloatArray:
        """Per-state entropy with ``0 log 0 = 0``."""
        p = self.probs
        logs = np.log(np.where(p > 0.0, p, 1.0))
        result: FloatArray = -np.sum(p * logs, axis=1)
        return result

    @property
    def is_deterministic(self) -> bool:
        return bool(np.all(np.max(self.probs, axis=1) == 1.0))

    @classmethod
    def uniform(cls, n_states: int, n_actions: int) -> "TabularPolicy":
        return cls(np.full((n_states, n_actions), 1.0 / n_actions))

    @classmethod
    def deterministic(cls, actions: np.ndarray, n_actions: int) -> "TabularPolicy":
        actions = np.asarray(actions, dtype=np.int64)
        probs = np.zeros((actions.size, n_actions))
        probs[np.arange(actions.size), actions] = 1.0
        return cls(probs)

    def to_json_dict(self) -> dict[str, Any]:
        return {"probs": self.probs.tolist()}

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> "TabularPolicy":
        return cls(np.asarray(data["probs"], dtype=np.float64))


def random_mdp(
    rng: np.random.Generator,
    n_states: int,
    n_actions: int,
    gamma: float,
    reward_range: tuple[float, float] = (-1.0, 1.0),
) -> FiniteMDP:
    """Dirichlet transition rows give a strictly positive, hence ergodic, chain."""
    transitions = rng.dirichlet(np.ones(n_states), size=(n_states, n_actions))
    transitions /= transitions.sum(axis=-1, keepdims=True)
    rewards = rng.uniform(reward_range[0], reward_range[1], size=(n_states, n_actions))
    return FiniteMDP(transitions=transitions, rewards=rewards, gamma=gamma)


def random_policy(rng: np.random.Generator, n_states: int, n_actions: int) -> TabularPolicy:
    probs = rng.dirichlet(np.ones(n_actions), size=n_states)
    probs /= probs.sum(axis=-1, keepdims=True)
    return TabularPolicy(probs)
