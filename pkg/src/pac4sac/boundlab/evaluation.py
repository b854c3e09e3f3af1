"""Exact policy evaluation on finite MDPs."""

import logging

import numpy as np

from pac4sac.boundlab.mdp import FiniteMDP, TabularPolicy
from pac4sac.domain import ConvergenceError, DegenerateChainError, FloatArray

logger = logging.getLogger(__name__)

SOFT_Q_TOLERANCE = 1e-12
STATIONARY_TOLERANCE = 1e-12
MAX_ITERATIONS = 1_000_000


def soft_state_values(policy: TabularPolicy, q: FloatArray, alpha: float) -> FloatArray:
    """``V(s) = sum_a pi(a|s) (Q(s, a) - alpha log pi(a|s))``."""
    values: FloatArray = np.sum(policy.probs * q, axis=1) + alpha * policy.entropy()
    return values


def soft_backup(mdp: FiniteMDP, policy: TabularPolicy, q: FloatArray, alpha: float) -> FloatArray:
    """One application of the soft Bellman operator to ``q``."""
    next_values = soft_state_values(policy, q, alpha)
    result: FloatArray = mdp.rewards + mdp.gamma * (mdp.transitions @ next_values)
    return result


def exact_soft_q(
    mdp: FiniteMDP,
    policy: TabularPolicy,
    alpha: float,
    tol: float = SOFT_Q_TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> FloatArray:
    """Fixed point of the soft backup, iterated until the sup-norm update drops below ``tol``."""
    mdp.validate()
    policy.validate(mdp)
    q = np.zeros_like(mdp.rewards)
    residual = np.inf
    for iteration in range(1, max_iterations + 1):
        updated = soft_backup(mdp, policy, q, alpha)
        residual = float(np.max(np.abs(updated - q)))
        q = updated
        if residual < tol:
            logger.debug("soft Q converged after %d iterations", iteration)
            return q
    raise ConvergenceError("soft Q iteration did not converge", max_iterations, residual)


def evaluate_policy_linear(mdp: FiniteMDP, policy: TabularPolicy, alpha: float) -> FloatArray:
    """Soft Q by solving ``(I - gamma P_pi) V = r_pi + alpha H(pi)`` directly."""
    mdp.validate()
    policy.validate(mdp)
    chain = induced_chain(mdp, policy)
    rhs = np.sum(policy.probs * mdp.rewards, axis=1) + alpha * policy.entropy()
    values = np.linalg.solve(np.eye(mdp.n_states) - mdp.gamma * chain, rhs)
    q: FloatArray = mdp.rewards + mdp.gamma * mdp.transitions @ values
    return q


def induced_chain(mdp: FiniteMDP, policy: TabularPolicy) -> FloatArray:
    """State transition matrix ``P_pi[s, s'] = sum_a pi(a|s) P(s'|s, a)``."""
    chain: FloatArray = np.einsum("sa,sat->st", policy.probs, mdp.transitions)
    return chain


def stationary_distribution(
    mdp: FiniteMDP,
    policy: TabularPolicy,
    tol: float = STATIONARY_TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> FloatArray:
    """Left fixed point of the induced chain by power iteration from the uniform distribution."""
    mdp.validate()
    policy.validate(mdp)
    chain = induced_chain(mdp, policy)
    dist = np.full(mdp.n_states, 1.0 / mdp.n_states)
    residual = np.inf
    for iteration in range(1, max_iterations + 1):
        updated = dist @ chain
        updated /= updated.sum()
        residual = float(np.sum(np.abs(updated - dist)))
        dist = updated
        if residual < tol:
            logger.debug("stationary distribution converged after %d iterations", iteration)
            return dist
    raise DegenerateChainError(
        "power iteration on the induced chain did not converge", max_iterations, residual
    )
