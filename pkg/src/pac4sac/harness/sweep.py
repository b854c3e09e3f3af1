"""Action-sample (shooting) sweep with smoothed learning curves."""

import asyncio
import csv
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from pac4sac.domain import Algorithm, ConfigError, EpisodeLog, MetricsReport
from pac4sac.harness.config import RunConfig
from pac4sac.harness.metrics import smooth
from pac4sac.harness.runner import train_all_seeds

logger = logging.getLogger(__name__)

SWEEP_FILE = "sweep.csv"
CURVES_FILE = "curves.csv"
SWEEP_COLUMNS = ("R", "auc_mean", "auc_sd", "highest_mean", "highest_sd")
CURVE_COLUMNS = ("R", "seed", "episode", "env_step", "reward", "smoothed")


@dataclass(frozen=True, slots=True)
class SweepRow:
    samples: int
    report: MetricsReport
    logs_by_seed: dict[int, tuple[EpisodeLog, ...]]


def write_sweep_csvs(directory: Path, rows: Sequence[SweepRow]) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    with (directory / SWEEP_FILE).open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            agg = row.report.aggregate
            writer.writerow(
                [row.samples, agg.auc_mean, agg.auc_sd, agg.highest_mean, agg.highest_sd]
            )
    with (directory / CURVES_FILE).open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CURVE_COLUMNS)
        for row in rows:
            for seed, logs in sorted(row.logs_by_seed.items()):
                smoothed = smooth([log.reward for log in logs])
                for log, value in zip(logs, smoothed, strict=True):
                    writer.writerow(
                        [row.samples, seed, log.episode, log.env_step, log.reward, float(value)]
                    )


async def run_shooting_sweep_async(
    config: RunConfig, sample_counts: Sequence[int], echo: bool = True
) -> list[SweepRow]:
    if config.algorithm is not Algorithm.PAC4SAC:
        raise ConfigError("the action-sample sweep applies to pac4sac only")
    if not sample_counts or any(r < 1 for r in sample_counts):
        raise ConfigError(f"action-sample counts must be at least 1, got {list(sample_counts)}")
    rows: list[SweepRow] = []
    for samples in sample_counts:
        row_config = config.with_overrides(
            action_samples=samples, output_dir=config.output_dir / f"R_{samples}"
        )
        logger.info("shooting sweep: R=%d", samples)
        result = await train_all_seeds(row_config, echo=echo)
        rows.append(SweepRow(samples, result.report, result.logs_by_seed))
    write_sweep_csvs(config.output_dir, rows)
    return rows


def run_shooting_sweep(
    config: RunConfig, sample_counts: Sequence[int], echo: bool = True
) -> list[SweepRow]:
    return asyncio.run(run_shooting_sweep_async(config, sample_counts, echo=echo))
