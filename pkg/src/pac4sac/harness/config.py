"""Run configuration: JSON file values, overridden by command-line flags."""

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pac4sac.agents import parse_algorithm
from pac4sac.domain import Algorithm, ConfigError, LossTerms, TrainingConfig, UsageError
from pac4sac.envs import default_registry, env_spec

_TRAINING_FIELDS = frozenset(f.name for f in dataclasses.fields(TrainingConfig))
_LOSS_TERM_FIELDS = frozenset(f.name for f in dataclasses.fields(LossTerms))


@dataclass(frozen=True, slots=True)
class RunConfig:
    env: str = "pendulum"
    algorithm: Algorithm = Algorithm.PAC4SAC
    training: TrainingConfig = field(default_factory=TrainingConfig)
    seeds: tuple[int, ...] = (0,)
    output_dir: Path = Path("runs")
    workers: int = 1

    def validate(self) -> None:
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError(f"seeds must be distinct, got {list(self.seeds)}")
        if self.env not in default_registry().names:
            known = ", ".join(default_registry().names)
            raise UsageError(f"unknown environment {self.env!r} (known: {known})")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        self.training.validate()

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Apply overrides, skipping ``None``; training hyperparameters may be named directly."""
        run_changes: dict[str, Any] = {}
        training_changes: dict[str, Any] = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key in _TRAINING_FIELDS:
                training_changes[key] = value
            elif key == "algorithm":
                run_changes[key] = parse_algorithm(value)
            elif key == "seeds":
                run_changes[key] = tuple(int(s) for s in value)
            elif key == "output_dir":
                run_changes[key] = Path(value)
            elif key in ("env", "workers", "training"):
                run_changes[key] = value
            else:
                raise ConfigError(f"unknown configuration key {key!r}")
        config = dataclasses.replace(self, **run_changes)
        if "total_steps" not in training_changes:
            config = config._with_env_budget(previous_env=self.env)
        if training_changes:
            config = dataclasses.replace(
                config, training=config.training.with_changes(**training_changes)
            )
        return config

    def _with_env_budget(self, previous_env: str) -> "RunConfig":
        """Swap in the new environment's step budget if the old one's default was in use."""
        names = default_registry().names
        if self.env == previous_env or self.env not in names or previous_env not in names:
            return self
        if self.training.total_steps != env_spec(previous_env).default_steps:
            return self
        budget = env_spec(self.env).default_steps
        return dataclasses.replace(self, training=self.training.with_changes(total_steps=budget))

    def training_for(self, seed: int) -> TrainingConfig:
        return self.training.with_changes(seed=seed)

    def to_json_dict(self) -> dict[str, Any]:
        training = dataclasses.asdict(self.training)
        training.pop("seed")
        return {
            "env": self.env,
            "algorithm": str(self.algorithm),
            "seeds": list(self.seeds),
            "output_dir": str(self.output_dir),
            "workers": self.workers,
            "training": training,
        }


def _training_from_dict(data: dict[str, Any]) -> TrainingConfig:
    unknown = set(data) - _TRAINING_FIELDS
    if unknown:
        raise ConfigError(f"unknown training keys: {sorted(unknown)}")
    values = dict(data)
    terms = values.pop("loss_terms", None)
    if terms is not None:
        if not isinstance(terms, dict) or set(terms) - _LOSS_TERM_FIELDS:
            raise ConfigError(f"loss_terms must be an object with keys {sorted(_LOSS_TERM_FIELDS)}")
        values["loss_terms"] = LossTerms(**terms)
    return TrainingConfig(**values)


def run_config_from_dict(data: dict[str, Any]) -> RunConfig:
    allowed = {"env", "algorithm", "seeds", "output_dir", "workers", "training"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    values = dict(data)
    if "training" in values:
        explicit = values["training"]
        values["training"] = _training_from_dict(explicit)
        if "total_steps" in explicit:
            values["total_steps"] = explicit["total_steps"]
    return RunConfig().with_overrides(**values)


def load_run_config(path: Path) -> RunConfig:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    return run_config_from_dict(data)
