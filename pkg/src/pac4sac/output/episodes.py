import csv
from pathlib import Path

from pac4sac.domain import EpisodeLog

EPISODE_COLUMNS = ("seed", "episode", "env_step", "reward", "length")


def format_episode_row(log: EpisodeLog) -> list[str]:
    return [str(log.seed), str(log.episode), str(log.env_step), repr(log.reward), str(log.length)]


class EpisodeCsvOutput:
    """Appends one ``episodes.csv`` row per finished episode; the header is written on creation."""

    def __init__(self, path: Path) -> None:
        self._path = path
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as handle:
            csv.writer(handle, lineterminator="\n").writerow(EPISODE_COLUMNS)

    @property
    def name(self) -> str:
        return "csv"

    @property
    def path(self) -> Path:
        return self._path

    async def send(self, log: EpisodeLog) -> None:
        with self._path.open("a", newline="") as handle:
            csv.writer(handle, lineterminator="\n").writerow(format_episode_row(log))


def read_episode_csv(path: Path) -> list[EpisodeLog]:
    with path.open(newline="") as handle:
        return [
            EpisodeLog(
                seed=int(row["seed"]),
                episode=int(row["episode"]),
                env_step=int(row["env_step"]),
                reward=float(row["reward"]),
                length=int(row["length"]),
            )
            for row in csv.DictReader(handle)
        ]
