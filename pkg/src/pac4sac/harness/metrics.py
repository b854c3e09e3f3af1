"""Learning-speed metrics over logged episodes."""

import json
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np

from pac4sac.domain import (
    AggregateMetrics,
    Algorithm,
    EpisodeLog,
    FloatArray,
    MetricsReport,
    SeedMetrics,
)

logger = logging.getLogger(__name__)

SMOOTHING_WINDOW = 10


def seed_metrics(rewards: Sequence[float]) -> SeedMetrics:
    """AUC is the mean episode reward; highest is the best single episode."""
    if not rewards:
        logger.warning("no finished episodes; metrics are undefined")
        return SeedMetrics(auc=float("nan"), highest=float("nan"))
    values = np.asarray(rewards, dtype=np.float64)
    return SeedMetrics(auc=float(values.mean()), highest=float(values.max()))


def aggregate_metrics(per_seed: Mapping[int, SeedMetrics]) -> AggregateMetrics:
    """Mean and population standard deviation across seeds."""
    aucs = np.array([m.auc for m in per_seed.values()])
    highest = np.array([m.highest for m in per_seed.values()])
    return AggregateMetrics(
        auc_mean=float(aucs.mean()),
        auc_sd=float(aucs.std()),
        highest_mean=float(highest.mean()),
        highest_sd=float(highest.std()),
    )


def build_report(
    algorithm: Algorithm, env: str, logs_by_seed: Mapping[int, Sequence[EpisodeLog]]
) -> MetricsReport:
    per_seed = {
        seed: seed_metrics([log.reward for log in logs])
        for seed, logs in sorted(logs_by_seed.items())
    }
    return MetricsReport(
        algorithm=algorithm, env=env, per_seed=per_seed, aggregate=aggregate_metrics(per_seed)
    )


def smooth(values: Sequence[float], window: int = SMOOTHING_WINDOW) -> FloatArray:
    """Trailing mean over the last ``window`` values, shorter at the start."""
    data = np.asarray(values, dtype=np.float64)
    cumulative = np.concatenate(([0.0], np.cumsum(data)))
    idx = np.arange(1, data.size + 1)
    start = np.maximum(idx - window, 0)
    result: FloatArray = (cumulative[idx] - cumulative[start]) / (idx - start)
    return result


def write_metrics_json(path: Path, report: MetricsReport) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_json_dict(), indent=2) + "\n")


def format_report(report: MetricsReport) -> str:
    agg = report.aggregate
    return (
        f"{report.algorithm} on {report.env} over {len(report.per_seed)} seed(s): "
        f"AUC {agg.auc_mean:.2f} ± {agg.auc_sd:.2f}, "
        f"highest {agg.highest_mean:.2f} ± {agg.highest_sd:.2f}"
    )
