from typing import Protocol, runtime_checkable

from pac4sac.domain import EpisodeLog


@runtime_checkable
class RunOutput(Protocol):
    """Protocol for finished-episode destinations."""

    @property
    def name(self) -> str:
        ...

    async def send(self, log: EpisodeLog) -> None:
        ...
