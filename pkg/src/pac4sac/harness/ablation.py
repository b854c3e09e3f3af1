"""Critic loss-term ablation: data fit alone, plus complexity, plus correction."""

import asyncio
import csv
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from pac4sac.domain import Algorithm, ConfigError, LossTerms, MetricsReport
from pac4sac.harness.config import RunConfig
from pac4sac.harness.runner import train_all_seeds

logger = logging.getLogger(__name__)

ABLATION_FILE = "ablation.csv"
ABLATION_COLUMNS = ("terms", "auc_mean", "auc_sd", "highest_mean", "highest_sd")

DEFAULT_ABLATION_ROWS: tuple[LossTerms, ...] = (
    LossTerms(data_fit=True, complexity=False, correction=False),
    LossTerms(data_fit=True, complexity=True, correction=False),
    LossTerms(data_fit=True, complexity=True, correction=True),
)


@dataclass(frozen=True, slots=True)
class AblationRow:
    terms: LossTerms
    report: MetricsReport


def write_ablation_csv(path: Path, rows: Sequence[AblationRow]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ABLATION_COLUMNS)
        for row in rows:
            agg = row.report.aggregate
            writer.writerow(
                [row.terms.label, agg.auc_mean, agg.auc_sd, agg.highest_mean, agg.highest_sd]
            )


async def run_ablation_async(
    config: RunConfig,
    rows: Sequence[LossTerms] = DEFAULT_ABLATION_ROWS,
    echo: bool = True,
) -> list[AblationRow]:
    if config.algorithm is not Algorithm.PAC4SAC:
        raise ConfigError("the loss-term ablation applies to pac4sac only")
    results: list[AblationRow] = []
    for terms in rows:
        if not terms.data_fit:
            raise ConfigError("every ablation row keeps the data fit term")
        row_config = config.with_overrides(
            loss_terms=terms, output_dir=config.output_dir / terms.label
        )
        logger.info("ablation row %s", terms.label)
        result = await train_all_seeds(row_config, echo=echo)
        results.append(AblationRow(terms=terms, report=result.report))
    write_ablation_csv(config.output_dir / ABLATION_FILE, results)
    return results


def run_ablation(
    config: RunConfig, rows: Sequence[LossTerms] = DEFAULT_ABLATION_ROWS, echo: bool = True
) -> list[AblationRow]:
    return asyncio.run(run_ablation_async(config, rows, echo=echo))
