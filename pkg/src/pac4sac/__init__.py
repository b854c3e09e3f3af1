__version__ = "0.1.0"

from pac4sac.agents import (
    Pac4SacAgent,
    SacAgent,
    SeedStreams,
    TrainingLoop,
    build_training_loop,
    make_agent,
)
from pac4sac.boundlab import (
    BoundInputs,
    BoundVariant,
    FiniteMDP,
    TabularPolicy,
    compute_pac_bound,
)
from pac4sac.core import TrainingPipeline
from pac4sac.domain import (
    Algorithm,
    EnvSpec,
    EpisodeLog,
    LossTerms,
    MetricsReport,
    Pac4SacError,
    StepReport,
    TrainingConfig,
)
from pac4sac.envs import make_env
from pac4sac.harness import RunConfig, run_training, run_verify
from pac4sac.output import ConsoleRunOutput, EpisodeCsvOutput, RunOutput

__all__ = [
    "__version__",
    "Algorithm",
    "EnvSpec",
    "EpisodeLog",
    "LossTerms",
    "MetricsReport",
    "Pac4SacError",
    "StepReport",
    "TrainingConfig",
    "make_env",
    "Pac4SacAgent",
    "SacAgent",
    "SeedStreams",
    "TrainingLoop",
    "build_training_loop",
    "make_agent",
    "TrainingPipeline",
    "RunOutput",
    "ConsoleRunOutput",
    "EpisodeCsvOutput",
    "BoundInputs",
    "BoundVariant",
    "FiniteMDP",
    "TabularPolicy",
    "compute_pac_bound",
    "RunConfig",
    "run_training",
    "run_verify",
]
