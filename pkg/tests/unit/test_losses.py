"""Tests for the critic and actor objectives, Adam, Polyak averaging and random search."""

import math
from typing import Any

import numpy as np
import pytest

from pac4sac.agents import (
    Adam,
    SeedStreams,
    empirical_variance,
    pac_critic_loss,
    policy_improvement_loss,
    polyak_update,
    select_action_random_search,
    soft_bellman_target,
)
from pac4sac.agents.streams import STREAM_NAMES
from pac4sac.diffmath import DiffArray, Tape, check_gradients, ops
from pac4sac.domain import ContractError, LossTerms, TransitionBatch
from pac4sac.envs import PENDULUM_SPEC
from pac4sac.harness.verify import LOSS_CASES
from pac4sac.nets import CriticNet, SquashedGaussianPolicy


def _nets(seed: int = 0) -> tuple[SquashedGaussianPolicy, CriticNet]:
    rng = np.random.default_rng(seed)
    actor = SquashedGaussianPolicy(PENDULUM_SPEC, rng, width=8)
    critic = CriticNet(3, 1, rng, probabilistic=True, width=8, init_log_std=-2.0)
    return actor, critic


def _batch(size: int = 5, terminal: float = 0.0) -> TransitionBatch:
    rng = np.random.default_rng(11)
    return TransitionBatch(
        states=rng.normal(size=(size, 3)),
        actions=rng.uniform(-2.0, 2.0, size=(size, 1)),
        rewards=rng.uniform(-10.0, 0.0, size=size),
        next_states=rng.normal(size=(size, 3)),
        terminals=np.full(size, terminal),
    )


class _NegativeSquare:
    """Differentiable critic ``Q(s, a) = -a^2``."""

    def evaluate(self, state: Any, action: Any, rng: np.random.Generator) -> DiffArray:
        a = ops.as_array(action)
        return ops.neg(ops.reshape(ops.square(a), (a.shape[0],)))


class TestPacCriticLoss:
    def test_regression_value(self) -> None:
        q = DiffArray([0.0, 2.0])
        loss = pac_critic_loss(q, np.zeros(2), 0.0, 1, gamma=0.99, xi=0.01)
        assert loss.item() == pytest.approx(1.9901, abs=1e-12)

    def test_complexity_term(self) -> None:
        q = DiffArray([1.0, 1.0])
        loss = pac_critic_loss(q, np.ones(2), 4.0, 100, 0.99, 0.01)
        assert loss.item() == pytest.approx(math.sqrt(4.0 / 100.0))

    def test_data_fit_only_is_mean_squared_error(self) -> None:
        q = DiffArray([1.0, -1.0, 3.0])
        targets = np.array([0.0, 0.0, 1.0])
        terms = LossTerms(complexity=False, correction=False)
        loss = pac_critic_loss(q, targets, 100.0, 10, 0.99, 0.5, terms)
        assert loss.item() == pytest.approx((1.0 + 1.0 + 4.0) / 3.0)

    def test_correction_lowers_loss_on_spread_predictions(self) -> None:
        q = DiffArray([-1.0, 0.5, 3.0])
        with_correction = pac_critic_loss(q, np.zeros(3), 1.0, 10, 0.99, 0.1).item()
        without = pac_critic_loss(
            q, np.zeros(3), 1.0, 10, 0.99, 0.1, LossTerms(correction=False)
        ).item()
        assert with_correction == pytest.approx(without - 0.99 * 0.1 * np.var([-1.0, 0.5, 3.0]))

    @pytest.mark.parametrize("seed", range(5))
    def test_correction_never_raises_the_loss(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        q = DiffArray(rng.normal(scale=3.0, size=8))
        targets = rng.normal(size=8)
        kl = float(rng.uniform(0.0, 50.0))
        on = pac_critic_loss(q, targets, kl, 100, 0.99, 0.5).item()
        off = pac_critic_loss(q, targets, kl, 100, 0.99, 0.5, LossTerms(correction=False)).item()
        assert on <= off

    def test_correction_vanishes_on_constant_predictions(self) -> None:
        q = DiffArray(np.full(4, 2.5))
        targets = np.array([0.0, 1.0, 2.0, 3.0])
        on = pac_critic_loss(q, targets, 3.0, 10, 0.99, 0.5).item()
        off = pac_critic_loss(q, targets, 3.0, 10, 0.99, 0.5, LossTerms(correction=False)).item()
        assert on == off

    def test_correction_gradient(self) -> None:
        values = np.array([-1.0, 0.5, 3.0])
        q = DiffArray(values)
        terms = LossTerms(complexity=False)
        with Tape() as tape:
            tape.watch(q)
            tape.backward(pac_critic_loss(q, values.copy(), 0.0, 1, 0.9, 0.5, terms))
            expected = -0.9 * 0.5 * 2.0 * (values - values.mean()) / 3.0
            np.testing.assert_allclose(q.grad, expected)

    def test_rejects_empty_buffer(self) -> None:
        with pytest.raises(ContractError):
            pac_critic_loss(DiffArray([0.0]), np.zeros(1), 0.0, 0, 0.99, 0.01)

    def test_rejects_shape_mismatch(self) -> None:
        with pytest.raises(ContractError):
            pac_critic_loss(DiffArray([0.0, 1.0]), np.zeros(3), 0.0, 1, 0.99, 0.01)

    def test_empirical_variance_is_population_variance(self) -> None:
        values = np.array([1.0, 2.0, 4.0, 8.0])
        assert empirical_variance(DiffArray(values)).item() == pytest.approx(np.var(values))

    @pytest.mark.parametrize("name", sorted(LOSS_CASES))
    def test_full_losses_match_finite_differences(self, name: str) -> None:
        rng = np.random.default_rng(3)
        for _ in range(3):
            build, inputs = LOSS_CASES[name](rng)
            result = check_gradients(build, inputs, rtol=1e-3)
            assert result.passed, f"{name}: max relative error {result.max_rel_error:.2e}"


class TestSoftBellmanTarget:
    def test_terminal_transitions_do_not_bootstrap(self) -> None:
        actor, critic = _nets()
        batch = _batch(terminal=1.0)
        rng = np.random.default_rng(0)
        targets = soft_bellman_target(batch, actor, critic, 0.2, 0.99, rng, rng)
        np.testing.assert_allclose(targets, batch.rewards)

    def test_matches_manual_computation(self) -> None:
        actor, critic = _nets()
        batch = _batch()
        targets = soft_bellman_target(
            batch, actor, critic, 0.2, 0.9, np.random.default_rng(1), np.random.default_rng(2)
        )
        actor_rng, critic_rng = np.random.default_rng(1), np.random.default_rng(2)
        noise = actor_rng.standard_normal((len(batch), 1))
        actions, log_prob = actor.sample(batch.next_states, noise)
        q = critic.evaluate(batch.next_states, actions.values, critic_rng).values
        expected = batch.rewards + 0.9 * (q - 0.2 * log_prob.values)
        np.testing.assert_allclose(targets, expected)

    def test_myopic_target_is_the_reward(self) -> None:
        actor, critic = _nets()
        batch = _batch()
        rng = np.random.default_rng(0)
        targets = soft_bellman_target(batch, actor, critic, 0.2, 0.0, rng, rng)
        np.testing.assert_array_equal(targets, batch.rewards)

    def test_targets_are_plain_arrays(self) -> None:
        actor, critic = _nets()
        rng = np.random.default_rng(0)
        with Tape() as tape:
            tape.watch(*critic.parameters().values())
            targets = soft_bellman_target(_batch(), actor, critic, 0.2, 0.99, rng, rng)
        assert isinstance(targets, np.ndarray)


class TestPolicyImprovementLoss:
    def test_without_entropy_is_negative_mean_value(self) -> None:
        actor, critic = _nets()
        states = _batch().states
        loss = policy_improvement_loss(
            states,
            actor,
            critic,
            0.2,
            np.random.default_rng(1),
            np.random.default_rng(2),
            entropy_term=False,
        )
        noise = np.random.default_rng(1).standard_normal((states.shape[0], 1))
        actions, _ = actor.sample(states, noise)
        q = critic.evaluate(states, actions.values, np.random.default_rng(2))
        assert loss.item() == pytest.approx(-float(np.mean(q.values)))

    def test_only_watched_actor_receives_gradient(self) -> None:
        actor, critic = _nets()
        with Tape() as tape:
            tape.watch(*actor.parameters().values())
            loss = policy_improvement_loss(
                _batch().states,
                actor,
                critic,
                0.2,
                np.random.default_rng(1),
                np.random.default_rng(2),
            )
            tape.backward(loss)
            assert any(np.any(p.grad != 0.0) for p in actor.parameters().values())
            assert all(np.all(p.grad == 0.0) for p in critic.parameters().values())

    def test_gradient_pulls_the_mean_towards_the_critic_peak(self) -> None:
        actor, _ = _nets()
        actor.head.weight.values[...] = 0.0
        actor.head.bias.values[...] = [0.3, -3.0]
        states = _batch().states
        bias = actor.head.bias

        def loss() -> DiffArray:
            return policy_improvement_loss(
                states,
                actor,
                _NegativeSquare(),
                0.0,
                np.random.default_rng(1),
                np.random.default_rng(2),
            )

        with Tape() as tape:
            tape.watch(bias)
            tape.backward(loss())
            analytic = float(bias.grad[0])
        step = 1e-5
        bias.values[0] += step
        upper = loss().item()
        bias.values[0] -= 2.0 * step
        lower = loss().item()
        bias.values[0] += step
        numeric = (upper - lower) / (2.0 * step)

        # descending the loss moves the pre-squash mean from 0.3 towards 0
        assert analytic > 0.0
        assert numeric > 0.0
        assert analytic == pytest.approx(numeric, rel=1e-4)


class TestPolyakUpdate:
    def test_interpolates_parameters(self) -> None:
        _, online = _nets(0)
        _, target = _nets(1)
        before = {k: v.values.copy() for k, v in target.parameters().items()}
        polyak_update(target, online, 0.25)
        for name, array in target.parameters().items():
            expected = 0.75 * before[name] + 0.25 * online.parameters()[name].values
            np.testing.assert_allclose(array.values, expected)

    def test_tau_one_copies_and_tau_zero_keeps(self) -> None:
        _, online = _nets(0)
        _, target = _nets(1)
        before = {k: v.values.copy() for k, v in target.parameters().items()}
        polyak_update(target, online, 0.0)
        for name, array in target.parameters().items():
            np.testing.assert_array_equal(array.values, before[name])
        polyak_update(target, online, 1.0)
        for name, array in target.parameters().items():
            np.testing.assert_array_equal(array.values, online.parameters()[name].values)

    def test_rejects_invalid_tau(self) -> None:
        _, online = _nets(0)
        with pytest.raises(ContractError):
            polyak_update(online, online, 1.5)

    def test_rejects_different_modules(self) -> None:
        actor, critic = _nets()
        with pytest.raises(ContractError):
            polyak_update(critic, actor, 0.5)


class TestAdam:
    def test_first_step_moves_by_learning_rate(self) -> None:
        x = DiffArray([1.0, -2.0])
        optimizer = Adam({"x": x}, learning_rate=0.1)
        with Tape() as tape:
            tape.watch(x)
            tape.backward(ops.sum(ops.square(x)))
        optimizer.step()
        np.testing.assert_allclose(x.values, [0.9, -1.9], atol=1e-6)
        assert optimizer.state().step == 1

    def test_minimizes_a_quadratic(self) -> None:
        x = DiffArray([3.0, -4.0])
        optimizer = Adam({"x": x}, learning_rate=0.05)
        for _ in range(500):
            optimizer.zero_grad()
            with Tape() as tape:
                tape.watch(x)
                tape.backward(ops.sum(ops.square(x)))
            optimizer.step()
        np.testing.assert_allclose(x.values, [0.0, 0.0], atol=0.1)

    def test_state_is_a_copy(self) -> None:
        x = DiffArray([1.0])
        optimizer = Adam({"x": x})
        state = optimizer.state()
        state.first_moments["x"][0] = 42.0
        assert optimizer.state().first_moments["x"][0] == 0.0

    def test_rejects_negative_learning_rate(self) -> None:
        with pytest.raises(ContractError):
            Adam({"x": DiffArray([1.0])}, learning_rate=-1.0)


class _TargetValue:
    """Scores actions by closeness to a fixed target action."""

    def __init__(self, target: float) -> None:
        self.target = target

    def evaluate(self, state: Any, action: Any, rng: np.random.Generator) -> DiffArray:
        a = ops.as_array(action).values[:, 0]
        return DiffArray(-((a - self.target) ** 2))


class TestRandomSearch:
    def test_single_sample_returns_actor_draw(self) -> None:
        actor, critic = _nets()
        state = np.array([1.0, 0.0, 0.5])
        critic_rng = np.random.default_rng(5)
        before = critic_rng.bit_generator.state
        action = select_action_random_search(
            state, actor, critic, 1, np.random.default_rng(4), critic_rng
        )
        expected, _ = actor.sample(state[None, :], np.random.default_rng(4).standard_normal((1, 1)))
        np.testing.assert_array_equal(action, expected.values[0])
        assert critic_rng.bit_generator.state == before

    def test_keeps_the_best_scoring_candidate(self) -> None:
        actor, _ = _nets()
        state = np.array([1.0, 0.0, 0.5])
        action = select_action_random_search(
            state, actor, _TargetValue(0.5), 16, np.random.default_rng(4), np.random.default_rng(5)
        )
        noise = np.random.default_rng(4).standard_normal((16, 1))
        candidates, _ = actor.sample(np.tile(state, (16, 1)), noise)
        best = candidates.values[np.argmin(np.abs(candidates.values[:, 0] - 0.5))]
        np.testing.assert_array_equal(action, best)

    def test_rejects_zero_samples(self) -> None:
        actor, critic = _nets()
        rng = np.random.default_rng(0)
        with pytest.raises(ContractError):
            select_action_random_search(np.zeros(3), actor, critic, 0, rng, rng)


class TestSeedStreams:
    def test_same_seed_reproduces_every_stream(self) -> None:
        first, second = SeedStreams.from_seed(3), SeedStreams.from_seed(3)
        for name in STREAM_NAMES:
            assert first.named()[name].random() == second.named()[name].random()

    def test_streams_are_distinct(self) -> None:
        draws = {name: rng.random() for name, rng in SeedStreams.from_seed(0).named().items()}
        assert len(set(draws.values())) == len(STREAM_NAMES)
        assert tuple(draws) == STREAM_NAMES
