from collections.abc import Callable

from pac4sac.agents.base import Agent
from pac4sac.agents.loop import TrainingLoop
from pac4sac.agents.pac4sac import Pac4SacAgent
from pac4sac.agents.sac import SacAgent
from pac4sac.agents.streams import SeedStreams
from pac4sac.domain import Algorithm, EnvSpec, TrainingConfig, UsageError
from pac4sac.envs import make_env

AgentFactory = Callable[[EnvSpec, TrainingConfig, SeedStreams], Agent]

AGENT_FACTORIES: dict[Algorithm, AgentFactory] = {
    Algorithm.PAC4SAC: Pac4SacAgent,
    Algorithm.SAC: SacAgent,
}


def parse_algorithm(name: str | Algorithm) -> Algorithm:
    try:
        return Algorithm(name)
    except ValueError:
        known = ", ".join(a.value for a in Algorithm)
        raise UsageError(f"unknown algorithm {name!r} (known: {known})") from None


def make_agent(
    algorithm: str | Algorithm, env: EnvSpec, config: TrainingConfig, streams: SeedStreams
) -> Agent:
    return AGENT_FACTORIES[parse_algorithm(algorithm)](env, config, streams)


def build_training_loop(
    env_name: str, algorithm: str | Algorithm, config: TrainingConfig
) -> TrainingLoop:
    """Environment, agent and streams for one seeded run, all derived from ``config.seed``."""
    config.validate()
    env = make_env(env_name)
    streams = SeedStreams.from_seed(config.seed)
    agent = make_agent(algorithm, env.spec, config, streams)
    return TrainingLoop(agent, env, config, streams)
