import logging

import numpy as np

from pac4sac.domain import ContractError, FloatArray
from pac4sac.nets import StochasticActor, ValueEstimator

logger = logging.getLogger(__name__)


def select_action_random_search(
    state: FloatArray,
    actor: StochasticActor,
    critic: ValueEstimator,
    samples: int,
    actor_rng: np.random.Generator,
    critic_rng: np.random.Generator,
) -> FloatArray:
    """Best of ``samples`` actor draws, each scored by its own critic weight draw.

    With a single sample the actor's draw is returned as is and ``critic_rng`` is
    left untouched.
    """
    if samples < 1:
        raise ContractError("random search needs at least one action sample")
    states = np.tile(np.asarray(state, dtype=np.float64).reshape(1, -1), (samples, 1))
    noise = actor_rng.standard_normal((samples, actor.action_dim))
    candidates, _ = actor.sample(states, noise)
    if samples == 1:
        action: FloatArray = candidates.values[0].copy()
        return action
    scores = critic.evaluate(states, candidates.values, critic_rng).values
    best = int(np.argmax(scores))
    logger.debug("random search kept candidate %d of %d (score %.4f)", best, samples, scores[best])
    action = candidates.values[best].copy()
    return action
