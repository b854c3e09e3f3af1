from pac4sac.output.base import RunOutput
from pac4sac.output.console import ConsoleRunOutput
from pac4sac.output.episodes import EPISODE_COLUMNS, EpisodeCsvOutput, read_episode_csv

__all__ = [
    "RunOutput",
    "ConsoleRunOutput",
    "EpisodeCsvOutput",
    "EPISODE_COLUMNS",
    "read_episode_csv",
]
