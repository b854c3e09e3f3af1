import numpy as np

from pac4sac.domain import ContractError, DimensionError, Transition, TransitionBatch


class ReplayBuffer:
    """Fixed-capacity ring of transitions; once full, the oldest entry is overwritten."""

    def __init__(self, capacity: int, state_dim: int, action_dim: int) -> None:
        if capacity < 1:
            raise ContractError("replay capacity must be at least 1")
        self.capacity = capacity
        self.state_dim = state_dim
        self.action_dim = action_dim
        self._states = np.zeros((capacity, state_dim))
        self._actions = np.zeros((capacity, action_dim))
        self._rewards = np.zeros(capacity)
        self._next_states = np.zeros((capacity, state_dim))
        self._terminals = np.zeros(capacity)
        self._cursor = 0
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def cursor(self) -> int:
        return self._cursor

    def push(self, transition: Transition) -> None:
        state = np.asarray(transition.state, dtype=np.float64).reshape(-1)
        action = np.asarray(transition.action, dtype=np.float64).reshape(-1)
        next_state = np.asarray(transition.next_state, dtype=np.float64).reshape(-1)
        if state.size != self.state_dim or next_state.size != self.state_dim:
            raise DimensionError("transition state width", state.shape, (self.state_dim,))
        if action.size != self.action_dim:
            raise DimensionError("transition action width", action.shape, (self.action_dim,))
        if not np.isfinite(transition.reward):
            raise ContractError(f"non-finite reward {transition.reward}")

        i = self._cursor
        self._states[i] = state
        self._actions[i] = action
        self._rewards[i] = transition.reward
        self._next_states[i] = next_state
        self._terminals[i] = float(transition.terminal)
        self._cursor = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def sample_indices(self, count: int, rng: np.random.Generator) -> np.ndarray:
        if self._size == 0:
            raise ContractError("cannot sample from an empty replay buffer")
        if count < 1:
            raise ContractError("sample count must be at least 1")
        return rng.integers(0, self._size, size=count)

    def sample(self, count: int, rng: np.random.Generator) -> TransitionBatch:
        """Uniform draw of ``count`` stored transitions, with replacement."""
        idx = self.sample_indices(count, rng)
        return TransitionBatch(
            states=self._states[idx],
            actions=self._actions[idx],
            rewards=self._rewards[idx],
            next_states=self._next_states[idx],
            terminals=self._terminals[idx],
        )

    def get(self, index: int) -> Transition:
        if not 0 <= index < self._size:
            raise ContractError(f"index {index} outside the {self._size} stored transitions")
        return Transition(
            state=self._states[index].copy(),
            action=self._actions[index].copy(),
            reward=float(self._rewards[index]),
            next_state=self._next_states[index].copy(),
            terminal=bool(self._terminals[index]),
        )
