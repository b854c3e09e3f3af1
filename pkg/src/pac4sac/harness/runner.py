"""Seeded multi-run training with per-seed artifacts and an aggregate report."""

import asyncio
import logging
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from pac4sac.agents import build_training_loop
from pac4sac.core import TrainingPipeline
from pac4sac.domain import EpisodeLog, MetricsReport
from pac4sac.harness.config import RunConfig
from pac4sac.harness.metrics import build_report, format_report, write_metrics_json
from pac4sac.nets import save_checkpoint
from pac4sac.output import ConsoleRunOutput, EpisodeCsvOutput, RunOutput

logger = logging.getLogger(__name__)

EPISODES_FILE = "episodes.csv"
METRICS_FILE = "metrics.json"
CHECKPOINT_FILE = "checkpoint.bin"


@dataclass(frozen=True, slots=True)
class TrainingResult:
    report: MetricsReport
    logs_by_seed: dict[int, tuple[EpisodeLog, ...]]


def seed_dir(output_dir: Path, seed: int) -> Path:
    return output_dir / f"seed_{seed}"


async def train_seed(config: RunConfig, seed: int, echo: bool = True) -> list[EpisodeLog]:
    """Train one seed to completion, writing its episodes, metrics and checkpoint."""
    directory = seed_dir(config.output_dir, seed)
    loop = build_training_loop(config.env, config.algorithm, config.training_for(seed))
    outputs: list[RunOutput] = [EpisodeCsvOutput(directory / EPISODES_FILE)]
    if echo:
        outputs.append(ConsoleRunOutput())

    started = time.perf_counter()
    logs = await TrainingPipeline(loop, seed, outputs).run()
    logger.info(
        "seed %d: %d episodes in %.1fs", seed, len(logs), time.perf_counter() - started
    )

    save_checkpoint(directory / CHECKPOINT_FILE, loop.agent.modules())
    write_metrics_json(
        directory / METRICS_FILE, build_report(config.algorithm, config.env, {seed: logs})
    )
    return logs


def _train_seed_in_worker(config: RunConfig, seed: int) -> list[EpisodeLog]:
    return asyncio.run(train_seed(config, seed, echo=False))


async def train_all_seeds(config: RunConfig, echo: bool = True) -> TrainingResult:
    config.validate()
    logs_by_seed: dict[int, tuple[EpisodeLog, ...]] = {}
    if config.workers == 1 or len(config.seeds) == 1:
        for seed in config.seeds:
            logs_by_seed[seed] = tuple(await train_seed(config, seed, echo=echo))
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=min(config.workers, len(config.seeds))) as pool:
            results = await asyncio.gather(
                *(
                    loop.run_in_executor(pool, _train_seed_in_worker, config, seed)
                    for seed in config.seeds
                )
            )
        for seed, logs in zip(config.seeds, results, strict=True):
            logs_by_seed[seed] = tuple(logs)

    report = build_report(config.algorithm, config.env, logs_by_seed)
    write_metrics_json(config.output_dir / METRICS_FILE, report)
    logger.info(format_report(report))
    return TrainingResult(report=report, logs_by_seed=logs_by_seed)


def run_training(config: RunConfig, echo: bool = True) -> MetricsReport:
    result = asyncio.run(train_all_seeds(config, echo=echo))
    return result.report


def episode_files(config: RunConfig) -> Sequence[Path]:
    return [seed_dir(config.output_dir, seed) / EPISODES_FILE for seed in config.seeds]
