import csv
import json
from pathlib import Path

import numpy as np
import pytest

from pac4sac.agents import build_training_loop
from pac4sac.domain import Algorithm, ConfigError, LossTerms, TrainingConfig
from pac4sac.harness.ablation import ABLATION_COLUMNS, ABLATION_FILE, run_ablation
from pac4sac.harness.config import RunConfig
from pac4sac.harness.plot import plot_directory
from pac4sac.harness.runner import (
    CHECKPOINT_FILE,
    EPISODES_FILE,
    METRICS_FILE,
    episode_files,
    run_training,
    seed_dir,
)
from pac4sac.harness.sweep import (
    CURVE_COLUMNS,
    CURVES_FILE,
    SWEEP_COLUMNS,
    SWEEP_FILE,
    run_shooting_sweep,
)
from pac4sac.nets import decode_parameters, load_checkpoint
from pac4sac.output import read_episode_csv

TINY = TrainingConfig(
    hidden_width=8,
    batch_size=4,
    action_samples=4,
    total_steps=410,
    warmup_steps=395,
    buffer_capacity=1000,
)


def _config(tmp_path: Path, **overrides: object) -> RunConfig:
    base = RunConfig(training=TINY, seeds=(0, 1), output_dir=tmp_path)
    return base.with_overrides(**overrides)


def _rows(path: Path) -> list[dict[str, str]]:
    with path.open(newline="") as handle:
        return list(csv.DictReader(handle))


def test_training_writes_per_seed_artifacts(tmp_path: Path):
    config = _config(tmp_path)

    report = run_training(config, echo=False)

    assert report.algorithm is Algorithm.PAC4SAC
    assert sorted(report.per_seed) == [0, 1]
    for seed in config.seeds:
        directory = seed_dir(tmp_path, seed)
        logs = read_episode_csv(directory / EPISODES_FILE)
        assert [log.env_step for log in logs] == [200, 400]
        assert all(log.seed == seed for log in logs)
        assert (directory / CHECKPOINT_FILE).exists()
        per_seed = json.loads((directory / METRICS_FILE).read_text())
        assert list(per_seed["per_seed"]) == [str(seed)]
    aggregate = json.loads((tmp_path / METRICS_FILE).read_text())
    assert aggregate["aggregate"]["auc_mean"] == pytest.approx(report.aggregate.auc_mean)


def test_same_seed_gives_byte_identical_episode_logs(tmp_path: Path):
    first = _config(tmp_path / "a", seeds=[3])
    second = _config(tmp_path / "b", seeds=[3])

    run_training(first, echo=False)
    run_training(second, echo=False)

    [a] = episode_files(first)
    [b] = episode_files(second)
    assert a.read_bytes() == b.read_bytes()


def test_checkpoint_restores_the_trained_modules(tmp_path: Path):
    config = _config(tmp_path, seeds=[0], algorithm="sac")
    run_training(config, echo=False)
    path = seed_dir(tmp_path, 0) / CHECKPOINT_FILE

    fresh = build_training_loop("pendulum", "sac", TINY.with_changes(seed=5)).agent
    load_checkpoint(path, fresh.modules())

    stored = decode_parameters(path.read_bytes())
    restored = fresh.modules()["target_critics"].parameters()["q2.head.bias"].values
    np.testing.assert_array_equal(restored, stored["target_critics.q2.head.bias"])
    assert len(stored) == sum(len(m.parameters()) for m in fresh.modules().values())


def test_parallel_workers_match_sequential_runs(tmp_path: Path):
    sequential = run_training(_config(tmp_path / "seq", algorithm="sac"), echo=False)
    parallel = run_training(_config(tmp_path / "par", algorithm="sac", workers=2), echo=False)

    assert parallel.per_seed == sequential.per_seed


def test_ablation_writes_one_row_per_term_set(tmp_path: Path):
    config = _config(tmp_path, seeds=[0])

    rows = run_ablation(config, echo=False)

    labels = ["data_fit", "data_fit+complexity", "data_fit+complexity+correction"]
    assert [row.terms.label for row in rows] == labels
    table = _rows(tmp_path / ABLATION_FILE)
    assert tuple(table[0]) == ABLATION_COLUMNS
    assert [row["terms"] for row in table] == labels
    for label in labels:
        assert (tmp_path / label / "seed_0" / EPISODES_FILE).exists()


def test_ablation_rejects_sac_and_missing_data_fit(tmp_path: Path):
    with pytest.raises(ConfigError):
        run_ablation(_config(tmp_path, algorithm="sac"), echo=False)
    with pytest.raises(ConfigError):
        run_ablation(_config(tmp_path), rows=[LossTerms(data_fit=False)], echo=False)


def test_shooting_sweep_writes_summary_and_curves(tmp_path: Path):
    config = _config(tmp_path)

    rows = run_shooting_sweep(config, [1, 4], echo=False)

    assert [row.samples for row in rows] == [1, 4]
    summary = _rows(tmp_path / SWEEP_FILE)
    assert tuple(summary[0]) == SWEEP_COLUMNS
    assert [row["R"] for row in summary] == ["1", "4"]
    curves = _rows(tmp_path / CURVES_FILE)
    assert tuple(curves[0]) == CURVE_COLUMNS
    # two R values, two seeds, two episodes each
    assert len(curves) == 8
    first = [row for row in curves if row["R"] == "1" and row["seed"] == "0"]
    rewards = [float(row["reward"]) for row in first]
    assert float(first[1]["smoothed"]) == pytest.approx(sum(rewards) / 2)


def test_shooting_sweep_rejects_zero_samples(tmp_path: Path):
    with pytest.raises(ConfigError):
        run_shooting_sweep(_config(tmp_path), [0, 4], echo=False)


def test_shooting_sweep_rejects_sac(tmp_path: Path):
    with pytest.raises(ConfigError, match="pac4sac only"):
        run_shooting_sweep(_config(tmp_path, algorithm="sac"), [1, 4], echo=False)


def test_plot_directory_renders_svgs(tmp_path: Path):
    run_shooting_sweep(_config(tmp_path), [1, 4], echo=False)

    written = plot_directory(tmp_path)

    assert tmp_path / "curves.svg" in written
    assert tmp_path / "R_1" / "seed_0" / "episodes.svg" in written
    assert all(path.read_text().lstrip().startswith("<?xml") for path in written)
