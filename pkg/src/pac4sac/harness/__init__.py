from pac4sac.harness.ablation import DEFAULT_ABLATION_ROWS, AblationRow, run_ablation
from pac4sac.harness.config import RunConfig, load_run_config, run_config_from_dict
from pac4sac.harness.metrics import (
    aggregate_metrics,
    build_report,
    format_report,
    seed_metrics,
    smooth,
)
from pac4sac.harness.runner import TrainingResult, run_training, train_all_seeds, train_seed
from pac4sac.harness.sweep import SweepRow, run_shooting_sweep
from pac4sac.harness.verify import VerifyReport, run_verify

__all__ = [
    "RunConfig",
    "load_run_config",
    "run_config_from_dict",
    "aggregate_metrics",
    "build_report",
    "format_report",
    "seed_metrics",
    "smooth",
    "TrainingResult",
    "run_training",
    "train_all_seeds",
    "train_seed",
    "DEFAULT_ABLATION_ROWS",
    "AblationRow",
    "run_ablation",
    "SweepRow",
    "run_shooting_sweep",
    "VerifyReport",
    "run_verify",
]
