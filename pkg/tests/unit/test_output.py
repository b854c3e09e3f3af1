from pathlib import Path

import pytest

from pac4sac.domain import EpisodeLog
from pac4sac.output import (
    EPISODE_COLUMNS,
    ConsoleRunOutput,
    EpisodeCsvOutput,
    RunOutput,
    read_episode_csv,
)


def _log(episode: int = 0, reward: float = -812.5) -> EpisodeLog:
    env_step = 200 * (episode + 1)
    return EpisodeLog(seed=3, episode=episode, env_step=env_step, reward=reward, length=200)


def test_run_output_protocol_is_runtime_checkable():
    assert hasattr(RunOutput, "__protocol_attrs__")


def test_console_output_implements_protocol():
    output = ConsoleRunOutput()
    assert isinstance(output, RunOutput)
    assert output.name == "console"


@pytest.mark.asyncio
async def test_console_output_send_formats_correctly(capsys):
    await ConsoleRunOutput().send(_log())

    captured = capsys.readouterr()
    assert "[EPISODE]" in captured.out
    assert "seed=3" in captured.out
    assert "step=200" in captured.out
    assert "reward=-812.500" in captured.out
    assert "length=200" in captured.out


@pytest.mark.asyncio
async def test_console_output_send_with_custom_prefix(capsys):
    await ConsoleRunOutput(prefix="[seed 3]").send(_log())

    captured = capsys.readouterr()
    assert "[seed 3]" in captured.out
    assert "[EPISODE]" not in captured.out


def test_csv_output_writes_header_on_creation(tmp_path: Path):
    path = tmp_path / "run" / "episodes.csv"
    output = EpisodeCsvOutput(path)

    assert isinstance(output, RunOutput)
    assert output.name == "csv"
    assert output.path == path
    assert path.read_text() == ",".join(EPISODE_COLUMNS) + "\n"


@pytest.mark.asyncio
async def test_csv_output_appends_rows_in_order(tmp_path: Path):
    path = tmp_path / "episodes.csv"
    output = EpisodeCsvOutput(path)

    await output.send(_log(0, -900.25))
    await output.send(_log(1, -0.1))

    lines = path.read_text().splitlines()
    assert lines[1] == "3,0,200,-900.25,200"
    assert lines[2] == "3,1,400,-0.1,200"


@pytest.mark.asyncio
async def test_csv_rewards_read_back_exactly(tmp_path: Path):
    path = tmp_path / "episodes.csv"
    output = EpisodeCsvOutput(path)
    logs = [_log(i, reward) for i, reward in enumerate([-1234.5678901234567, 1 / 3, -0.0])]

    for log in logs:
        await output.send(log)

    assert read_episode_csv(path) == logs


def test_csv_output_truncates_previous_run(tmp_path: Path):
    path = tmp_path / "episodes.csv"
    path.write_text("stale\n")

    EpisodeCsvOutput(path)

    assert read_episode_csv(path) == []
