"""Domain models and errors shared across the package."""

from pac4sac.domain.exceptions import (
    ConfigError,
    ContractError,
    ConvergenceError,
    DegenerateChainError,
    DimensionError,
    DomainError,
    Pac4SacError,
    SampleSizeError,
    UsageError,
)
from pac4sac.domain.models import (
    AggregateMetrics,
    Algorithm,
    EnvSpec,
    EpisodeLog,
    FloatArray,
    LossTerms,
    MetricsReport,
    SeedMetrics,
    StepReport,
    TrainingConfig,
    Transition,
    TransitionBatch,
)

__all__ = [
    "AggregateMetrics",
    "Algorithm",
    "EnvSpec",
    "EpisodeLog",
    "FloatArray",
    "LossTerms",
    "MetricsReport",
    "SeedMetrics",
    "StepReport",
    "TrainingConfig",
    "Transition",
    "TransitionBatch",
    "Pac4SacError",
    "ContractError",
    "DimensionError",
    "DomainError",
    "ConvergenceError",
    "DegenerateChainError",
    "SampleSizeError",
    "ConfigError",
    "UsageError",
]
