"""Tests for the replay buffer."""

import numpy as np
import pytest

from pac4sac.domain import ContractError, DimensionError, Transition
from pac4sac.replay import ReplayBuffer


def _transition(i: int, terminal: bool = False) -> Transition:
    return Transition(
        state=np.full(3, float(i)),
        action=np.array([i / 10.0]),
        reward=-float(i),
        next_state=np.full(3, float(i + 1)),
        terminal=terminal,
    )


class TestPush:
    def test_push_into_empty_buffer(self) -> None:
        buffer = ReplayBuffer(4, 3, 1)
        buffer.push(_transition(0))
        assert len(buffer) == 1
        assert buffer.cursor == 1

    def test_ring_overwrites_oldest(self) -> None:
        buffer = ReplayBuffer(3, 3, 1)
        for i in range(4):
            buffer.push(_transition(i))
        assert len(buffer) == 3
        assert buffer.get(0).reward == -3.0
        assert buffer.get(1).reward == -1.0

    def test_stored_transitions_are_returned_unchanged(self) -> None:
        buffer = ReplayBuffer(2, 3, 1)
        original = _transition(7, terminal=True)
        buffer.push(original)
        stored = buffer.get(0)
        np.testing.assert_array_equal(stored.state, original.state)
        np.testing.assert_array_equal(stored.action, original.action)
        np.testing.assert_array_equal(stored.next_state, original.next_state)
        assert stored.reward == original.reward
        assert stored.terminal

    def test_rejects_wrong_widths(self) -> None:
        buffer = ReplayBuffer(2, 3, 1)
        bad_state = Transition(np.zeros(2), np.zeros(1), 0.0, np.zeros(3), False)
        bad_action = Transition(np.zeros(3), np.zeros(2), 0.0, np.zeros(3), False)
        with pytest.raises(DimensionError):
            buffer.push(bad_state)
        with pytest.raises(DimensionError):
            buffer.push(bad_action)

    def test_rejects_non_finite_reward(self) -> None:
        buffer = ReplayBuffer(2, 3, 1)
        with pytest.raises(ContractError):
            buffer.push(Transition(np.zeros(3), np.zeros(1), float("nan"), np.zeros(3), False))

    def test_rejects_zero_capacity(self) -> None:
        with pytest.raises(ContractError):
            ReplayBuffer(0, 3, 1)

    def test_get_outside_stored_range(self) -> None:
        buffer = ReplayBuffer(4, 3, 1)
        buffer.push(_transition(0))
        with pytest.raises(ContractError):
            buffer.get(1)


class TestSample:
    def test_empty_buffer_raises(self) -> None:
        with pytest.raises(ContractError):
            ReplayBuffer(4, 3, 1).sample(2, np.random.default_rng(0))

    def test_count_must_be_positive(self) -> None:
        buffer = ReplayBuffer(4, 3, 1)
        buffer.push(_transition(0))
        with pytest.raises(ContractError):
            buffer.sample(0, np.random.default_rng(0))

    def test_single_transition_is_repeated(self) -> None:
        buffer = ReplayBuffer(4, 3, 1)
        buffer.push(_transition(5, terminal=True))
        batch = buffer.sample(8, np.random.default_rng(0))
        assert len(batch) == 8
        np.testing.assert_array_equal(batch.rewards, np.full(8, -5.0))
        np.testing.assert_array_equal(batch.terminals, np.ones(8))
        assert batch.states.shape == (8, 3)
        assert batch.actions.shape == (8, 1)

    def test_fixed_seed_reproduces_indices(self) -> None:
        buffer = ReplayBuffer(10, 3, 1)
        for i in range(10):
            buffer.push(_transition(i))
        first = buffer.sample_indices(32, np.random.default_rng(4))
        second = buffer.sample_indices(32, np.random.default_rng(4))
        np.testing.assert_array_equal(first, second)

    def test_sampling_is_uniform(self) -> None:
        buffer = ReplayBuffer(10, 3, 1)
        for i in range(10):
            buffer.push(_transition(i))
        draws = 100_000
        counts = np.bincount(buffer.sample_indices(draws, np.random.default_rng(0)), minlength=10)
        sigma = np.sqrt(draws * 0.1 * 0.9)
        assert np.all(np.abs(counts - draws / 10) < 4.0 * sigma)

    def test_never_samples_an_unfilled_slot(self) -> None:
        rng = np.random.default_rng(0)
        buffer = ReplayBuffer(3, 3, 1)
        for i in range(1, 8):
            buffer.push(_transition(i))
            batch = buffer.sample(16, rng)
            # slot rewards are -i for i >= 1, so a zero reward would be an empty slot
            assert np.all(batch.rewards < 0.0)
