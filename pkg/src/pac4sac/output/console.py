from pac4sac.domain import EpisodeLog


class ConsoleRunOutput:
    """Console output adapter for finished episodes."""

    def __init__(self, prefix: str = "[EPISODE]") -> None:
        self._prefix = prefix

    @property
    def name(self) -> str:
        return "console"

    async def send(self, log: EpisodeLog) -> None:
        print(
            f"{self._prefix} seed={log.seed} episode={log.episode} step={log.env_step} "
            f"reward={log.reward:.3f} length={log.length}"
        )
