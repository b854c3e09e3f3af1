"""PAC4SAC and twin-critic SAC agents and the loop that trains them."""

from pac4sac.agents.base import Agent, AgentState, UpdateReport
from pac4sac.agents.losses import (
    empirical_variance,
    pac_critic_loss,
    policy_improvement_loss,
    polyak_update,
    soft_bellman_target,
)
from pac4sac.agents.loop import TrainingLoop, sac_baseline_step, train_step
from pac4sac.agents.optim import Adam, AdamState
from pac4sac.agents.pac4sac import Pac4SacAgent
from pac4sac.agents.registry import build_training_loop, make_agent, parse_algorithm
from pac4sac.agents.sac import SacAgent, TwinCritic
from pac4sac.agents.search import select_action_random_search
from pac4sac.agents.streams import SeedStreams

__all__ = [
    "Agent",
    "AgentState",
    "UpdateReport",
    "empirical_variance",
    "pac_critic_loss",
    "policy_improvement_loss",
    "polyak_update",
    "soft_bellman_target",
    "TrainingLoop",
    "sac_baseline_step",
    "train_step",
    "Adam",
    "AdamState",
    "Pac4SacAgent",
    "build_training_loop",
    "make_agent",
    "parse_algorithm",
    "SacAgent",
    "TwinCritic",
    "select_action_random_search",
    "SeedStreams",
]
