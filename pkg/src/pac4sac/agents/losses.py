"""Critic and actor objectives shared by both agents."""

import numpy as np

from pac4sac.diffmath import DiffArray, ops
from pac4sac.domain import ContractError, FloatArray, LossTerms, TransitionBatch
from pac4sac.nets import Module, StochasticActor, ValueEstimator


def soft_bellman_target(
    batch: TransitionBatch,
    actor: StochasticActor,
    target_critic: ValueEstimator,
    alpha: float,
    gamma: float,
    actor_rng: np.random.Generator,
    critic_rng: np.random.Generator,
) -> FloatArray:
    """``r + (1 - terminal) * gamma * (Q'(s', a') - alpha * log pi(a' | s'))`` with fresh ``a'``.

    The result is a plain array, so nothing downstream differentiates through it.
    """
    noise = actor_rng.standard_normal((len(batch), actor.action_dim))
    next_actions, log_prob = actor.sample(batch.next_states, noise)
    next_q = target_critic.evaluate(
        ops.as_array(batch.next_states), next_actions.detach(), critic_rng
    )
    soft_value = next_q.values - alpha * log_prob.values
    target: FloatArray = batch.rewards + (1.0 - batch.terminals) * gamma * soft_value
    return target


def empirical_variance(q: DiffArray) -> DiffArray:
    """Population variance of a batch of predictions, differentiable through ``q``."""
    if q.size < 1:
        raise ContractError("variance of an empty batch")
    centered = ops.sub(q, ops.mean(q))
    return ops.mean(ops.square(centered))


def pac_critic_loss(
    q: DiffArray,
    targets: FloatArray,
    kl: DiffArray | float,
    n: int,
    gamma: float,
    xi: float,
    terms: LossTerms | None = None,
) -> DiffArray:
    """Data fit, plus ``sqrt(kl / n)``, minus ``gamma * xi * Var(q)``, by enabled term."""
    terms = terms or LossTerms()
    if n < 1:
        raise ContractError("the complexity penalty needs at least one stored transition")
    if q.shape != np.shape(targets):
        raise ContractError(f"predictions {q.shape} and targets {np.shape(targets)} differ")
    loss = ops.mean(ops.square(ops.sub(q, targets)))
    if terms.complexity:
        loss = ops.add(loss, ops.sqrt(ops.divide(kl, float(n))))
    if terms.correction:
        loss = ops.sub(loss, ops.mul(empirical_variance(q), gamma * xi))
    return loss


def policy_improvement_loss(
    states: FloatArray,
    actor: StochasticActor,
    critic: ValueEstimator,
    alpha: float,
    actor_rng: np.random.Generator,
    critic_rng: np.random.Generator,
    entropy_term: bool = True,
) -> DiffArray:
    """``mean(alpha * log pi(a|s) - Q(s, a))`` over reparameterized actions.

    Only arrays watched by the caller's tape receive gradient, so watching the actor
    alone keeps the critic fixed.
    """
    noise = actor_rng.standard_normal((states.shape[0], actor.action_dim))
    actions, log_prob = actor.sample(states, noise)
    q = critic.evaluate(ops.as_array(states), actions, critic_rng)
    if not entropy_term:
        return ops.neg(ops.mean(q))
    return ops.mean(ops.sub(ops.mul(log_prob, alpha), q))


def polyak_update(target: Module, online: Module, tau: float) -> None:
    """``target <- tau * online + (1 - tau) * target`` for every parameter."""
    if not 0.0 <= tau <= 1.0:
        raise ContractError(f"tau must lie in [0, 1], got {tau}")
    dst, src = target.parameters(), online.parameters()
    if dst.keys() != src.keys():
        raise ContractError("target and online modules expose different parameters")
    for name, array in dst.items():
        source = src[name].values
        if array.shape != source.shape:
            raise ContractError(f"shape mismatch for {name}: {array.shape} vs {source.shape}")
        if tau == 1.0:
            array.values[...] = source
        elif tau > 0.0:
            array.values *= 1.0 - tau
            array.values += tau * source
