from __future__ import annotations

from collections.abc import Sequence
from typing import Protocol, runtime_checkable
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing_extensions import Self

from pac4sac.domain import EpisodeLog, StepReport
from pac4sac.output import RunOutput


@runtime_checkable
class StepSource(Protocol):
    """Protocol for async step-report sources."""

    def __aiter__(self) -> Self:
        ...

    async def __anext__(self) -> StepReport:
        ...


class TrainingPipeline:
    """Folds a step stream into episode logs and fans each one out to every output."""

    def __init__(self, source: StepSource, seed: int, outputs: Sequence[RunOutput]) -> None:
        self._source = source
        self._seed = seed
        self._outputs = tuple(outputs)

    async def run(self) -> list[EpisodeLog]:
        logs: list[EpisodeLog] = []
        async for report in self._source:
            if not report.episode_finished:
                continue
            assert report.episode_reward is not None and report.episode_length is not None
            log = EpisodeLog(
                seed=self._seed,
                episode=report.episode,
                env_step=report.step,
                reward=report.episode_reward,
                length=report.episode_length,
            )
            logs.append(log)
            for output in self._outputs:
                await output.send(log)
        return logs
