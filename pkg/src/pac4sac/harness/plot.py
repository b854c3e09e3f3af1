"""SVG learning curves rendered from the run CSVs."""

import csv
import logging
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from pac4sac.harness.metrics import smooth  # noqa: E402
from pac4sac.harness.runner import EPISODES_FILE  # noqa: E402
from pac4sac.harness.sweep import CURVES_FILE  # noqa: E402
from pac4sac.output import read_episode_csv  # noqa: E402

logger = logging.getLogger(__name__)


def plot_episodes(csv_path: Path, svg_path: Path | None = None) -> Path:
    """Raw and smoothed episode reward against environment steps."""
    logs = read_episode_csv(csv_path)
    svg_path = svg_path or csv_path.with_suffix(".svg")
    steps = [log.env_step for log in logs]
    rewards = [log.reward for log in logs]

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(steps, rewards, color="tab:blue", alpha=0.3, label="episode reward")
    ax.plot(steps, smooth(rewards), color="tab:blue", label="smoothed")
    ax.set_xlabel("environment steps")
    ax.set_ylabel("episode reward")
    ax.set_title(csv_path.parent.name)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(svg_path, format="svg")
    plt.close(fig)
    return svg_path


def plot_curves(csv_path: Path, svg_path: Path | None = None) -> Path:
    """Cross-seed mean of the smoothed reward, one line per action-sample count."""
    by_samples: dict[int, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    with csv_path.open(newline="") as handle:
        for row in csv.DictReader(handle):
            by_samples[int(row["R"])][int(row["seed"])].append(float(row["smoothed"]))
    svg_path = svg_path or csv_path.with_suffix(".svg")

    fig, ax = plt.subplots(figsize=(7, 4))
    for samples, per_seed in sorted(by_samples.items()):
        length = min(len(values) for values in per_seed.values())
        stacked = np.array([values[:length] for values in per_seed.values()])
        episodes = np.arange(1, length + 1)
        mean, sd = stacked.mean(axis=0), stacked.std(axis=0)
        (line,) = ax.plot(episodes, mean, label=f"R={samples}")
        ax.fill_between(episodes, mean - sd, mean + sd, color=line.get_color(), alpha=0.15)
    ax.set_xlabel("episode")
    ax.set_ylabel("smoothed episode reward")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(svg_path, format="svg")
    plt.close(fig)
    return svg_path


def plot_directory(directory: Path) -> list[Path]:
    """Render every episodes and curves CSV found below ``directory``."""
    written = [plot_episodes(path) for path in sorted(directory.rglob(EPISODES_FILE))]
    written += [plot_curves(path) for path in sorted(directory.rglob(CURVES_FILE))]
    if not written:
        logger.warning("no %s or %s files under %s", EPISODES_FILE, CURVES_FILE, directory)
    for path in written:
        logger.info("wrote %s", path)
    return written
