"""Numerical checks of the value-error lemma and of search-policy improvement."""

import logging
from dataclasses import dataclass

import numpy as np

from pac4sac.boundlab.evaluation import (
    evaluate_policy_linear,
    exact_soft_q,
    soft_backup,
    soft_state_values,
    stationary_distribution,
)
from pac4sac.boundlab.mdp import FiniteMDP, TabularPolicy
from pac4sac.domain import ContractError, DimensionError, FloatArray

logger = logging.getLogger(__name__)

LEMMA_SLACK = 1e-9
IMPROVEMENT_SLACK = 1e-9


@dataclass(frozen=True, slots=True)
class Lemma1Result:
    lhs: float
    rhs: float
    holds: bool


def check_lemma1(
    mdp: FiniteMDP, policy: TabularPolicy, q_hat: FloatArray, alpha: float
) -> Lemma1Result:
    """Compare ``||q_hat - Q||^2`` with ``||T q_hat - q_hat||^2 / (1 - gamma)^2``.

    Both norms weight state-action pairs by the stationary state distribution times
    the policy.
    """
    if q_hat.shape != mdp.rewards.shape:
        raise DimensionError("q_hat must be [S, A]", q_hat.shape, mdp.rewards.shape)
    q_true = exact_soft_q(mdp, policy, alpha)
    weights = stationary_distribution(mdp, policy)[:, None] * policy.probs
    lhs = float(np.sum(weights * (q_hat - q_true) ** 2))
    bellman_residual = soft_backup(mdp, policy, q_hat, alpha) - q_hat
    rhs = float(np.sum(weights * bellman_residual**2)) / (1.0 - mdp.gamma) ** 2
    return Lemma1Result(lhs=lhs, rhs=rhs, holds=lhs <= rhs + LEMMA_SLACK)


def search_policy(policy: TabularPolicy, q: FloatArray, samples: int) -> TabularPolicy:
    """Exact action distribution of "best of ``samples`` draws from ``policy`` under ``q``".

    With actions grouped into levels of equal ``q`` and sorted ascending, level ``k`` wins
    with probability ``F_k^R - F_{k-1}^R`` where ``F`` is the policy's cumulative mass.
    Ties inside a level resolve to the first drawn action, i.e. in proportion to ``policy``.
    """
    if samples < 1:
        raise ContractError("search needs at least one sample")
    if q.shape != policy.probs.shape:
        raise DimensionError("q must match the policy table", q.shape, policy.probs.shape)
    probs = np.zeros_like(policy.probs)
    for s in range(policy.n_states):
        row = policy.probs[s]
        levels, inverse = np.unique(q[s], return_inverse=True)
        level_mass = np.bincount(inverse, weights=row, minlength=levels.size)
        cdf = np.minimum(np.cumsum(level_mass), 1.0)
        win = np.diff(np.concatenate(([0.0], cdf**samples)))
        share = np.divide(row, level_mass[inverse], out=np.zeros_like(row), where=row > 0.0)
        probs[s] = win[inverse] * share
        probs[s] /= probs[s].sum()
    return TabularPolicy(probs)


def sample_search_actions(
    policy: TabularPolicy, q: FloatArray, samples: int, rng: np.random.Generator
) -> np.ndarray:
    """One Monte-Carlo search per state: draw ``samples`` actions, keep the best under ``q``."""
    chosen = np.empty(policy.n_states, dtype=np.int64)
    for s in range(policy.n_states):
        draws = rng.choice(policy.n_actions, size=samples, p=policy.probs[s])
        chosen[s] = draws[int(np.argmax(q[s, draws]))]
    return chosen


@dataclass(frozen=True, slots=True, eq=False)
class ImprovementResult:
    """Outcome of the search-policy improvement links for one MDP and sample count.

    ``value_gain`` and ``lookahead_gain`` are per-state minima over the exact search
    policy; ``sampled_gain`` is the per-state Monte-Carlo mean of the lookahead gain
    with its tolerance; ``sampled_value_gain`` is informational only.
    """

    samples: int
    trials: int
    base_values: FloatArray
    search_values: FloatArray
    lookahead_values: FloatArray
    value_gain: float
    lookahead_gain: float
    sampled_gain: FloatArray
    sampled_tolerance: FloatArray
    sampled_value_gain: float
    holds: bool


def check_policy_improvement_R(
    mdp: FiniteMDP,
    policy: TabularPolicy,
    samples: int,
    trials: int,
    rng: np.random.Generator,
    mc_sigmas: float = 5.0,
) -> ImprovementResult:
    """Verify that acting with the best of ``samples`` actor draws never loses value.

    Checked link by link without entropy: the exact search policy's value dominates the
    base policy's, the one-step lookahead of the search policy under the base Q dominates
    the base value, and a Monte-Carlo average of that lookahead agrees within
    ``mc_sigmas`` standard errors.
    """
    if trials < 1:
        raise ContractError("at least one Monte-Carlo trial is required")
    q = exact_soft_q(mdp, policy, alpha=0.0)
    base = soft_state_values(policy, q, alpha=0.0)

    searched = search_policy(policy, q, samples)
    search_values = soft_state_values(searched, evaluate_policy_linear(mdp, searched, 0.0), 0.0)
    lookahead = np.sum(searched.probs * q, axis=1)

    gains = np.empty((trials, mdp.n_states))
    value_gains = np.empty(trials)
    states = np.arange(mdp.n_states)
    for t in range(trials):
        actions = sample_search_actions(policy, q, samples, rng)
        gains[t] = q[states, actions] - base
        sampled = TabularPolicy.deterministic(actions, mdp.n_actions)
        sampled_values = soft_state_values(sampled, evaluate_policy_linear(mdp, sampled, 0.0), 0.0)
        value_gains[t] = float(np.mean(sampled_values - base))

    mean_gain = gains.mean(axis=0)
    if trials > 1:
        stderr = gains.std(axis=0, ddof=1) / np.sqrt(trials)
    else:
        stderr = np.zeros(mdp.n_states)
    tolerance = mc_sigmas * stderr + IMPROVEMENT_SLACK

    value_gain = float(np.min(search_values - base))
    lookahead_gain = float(np.min(lookahead - base))
    holds = (
        value_gain >= -IMPROVEMENT_SLACK
        and lookahead_gain >= -IMPROVEMENT_SLACK
        and bool(np.all(mean_gain >= -tolerance))
    )
    if not holds:
        logger.warning(
            "search improvement violated for R=%d: value gain %.3e, lookahead gain %.3e",
            samples,
            value_gain,
            lookahead_gain,
        )
    return ImprovementResult(
        samples=samples,
        trials=trials,
        base_values=base,
        search_values=search_values,
        lookahead_values=lookahead,
        value_gain=value_gain,
        lookahead_gain=lookahead_gain,
        sampled_gain=mean_gain,
        sampled_tolerance=tolerance,
        sampled_value_gain=float(np.mean(value_gains)),
        holds=holds,
    )
