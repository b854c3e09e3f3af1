"""Tests for run configuration loading and overrides."""

import json
from pathlib import Path

import pytest

from pac4sac.domain import Algorithm, ConfigError, LossTerms, UsageError
from pac4sac.harness.config import RunConfig, load_run_config, run_config_from_dict


class TestRunConfig:
    def test_defaults_are_valid(self) -> None:
        config = RunConfig()
        config.validate()
        assert config.env == "pendulum"
        assert config.algorithm is Algorithm.PAC4SAC
        assert config.seeds == (0,)

    def test_training_keys_route_to_training_config(self) -> None:
        config = RunConfig().with_overrides(xi=0.05, action_samples=8, env="cartpole-swingup")
        assert config.training.xi == 0.05
        assert config.training.action_samples == 8
        assert config.env == "cartpole-swingup"

    def test_none_overrides_are_skipped(self) -> None:
        assert RunConfig().with_overrides(xi=None, env=None) == RunConfig()

    def test_override_conversions(self) -> None:
        config = RunConfig().with_overrides(algorithm="sac", seeds=[3, 4], output_dir="out")
        assert config.algorithm is Algorithm.SAC
        assert config.seeds == (3, 4)
        assert config.output_dir == Path("out")

    def test_unknown_override(self) -> None:
        with pytest.raises(ConfigError, match="unknown configuration key"):
            RunConfig().with_overrides(colour="blue")

    def test_unknown_algorithm(self) -> None:
        with pytest.raises(UsageError):
            RunConfig().with_overrides(algorithm="ddpg")

    def test_training_for_sets_the_seed(self) -> None:
        assert RunConfig().training_for(9).seed == 9

    @pytest.mark.parametrize(
        ("overrides", "error"),
        [
            ({"seeds": []}, ConfigError),
            ({"seeds": [1, 1]}, ConfigError),
            ({"env": "hopper"}, UsageError),
            ({"workers": 0}, ConfigError),
            ({"tau": 0.0}, ConfigError),
        ],
    )
    def test_validate_rejects(self, overrides: dict[str, object], error: type[Exception]) -> None:
        with pytest.raises(error):
            RunConfig().with_overrides(**overrides).validate()

    def test_environment_sets_the_default_step_budget(self) -> None:
        assert RunConfig().training.total_steps == 10_000
        cartpole = RunConfig().with_overrides(env="cartpole-swingup")
        assert cartpole.training.total_steps == 30_000
        assert cartpole.with_overrides(env="pendulum").training.total_steps == 10_000

    def test_explicit_steps_win_over_the_environment_budget(self) -> None:
        config = RunConfig().with_overrides(env="cartpole-swingup", total_steps=10_000)
        assert config.training.total_steps == 10_000
        custom = RunConfig().with_overrides(total_steps=2_000).with_overrides(
            env="cartpole-swingup"
        )
        assert custom.training.total_steps == 2_000

    def test_json_dict_omits_the_per_run_seed(self) -> None:
        data = RunConfig().to_json_dict()
        assert "seed" not in data["training"]
        assert data["algorithm"] == "pac4sac"
        assert data["training"]["loss_terms"] == {
            "data_fit": True,
            "complexity": True,
            "correction": True,
        }


class TestLoading:
    def test_load_from_file(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text(
            json.dumps(
                {
                    "env": "pendulum",
                    "algorithm": "sac",
                    "seeds": [0, 1, 2],
                    "training": {"total_steps": 500, "loss_terms": {"correction": False}},
                }
            )
        )
        config = load_run_config(path)
        assert config.algorithm is Algorithm.SAC
        assert config.seeds == (0, 1, 2)
        assert config.training.total_steps == 500
        assert config.training.loss_terms == LossTerms(correction=False)

    def test_round_trip_through_json_dict(self) -> None:
        original = RunConfig().with_overrides(xi=0.2, seeds=[5])
        assert run_config_from_dict(original.to_json_dict()) == original

    def test_file_without_steps_uses_the_environment_budget(self) -> None:
        config = run_config_from_dict({"env": "cartpole-swingup", "training": {"xi": 0.05}})
        assert config.training.total_steps == 30_000
        pinned = run_config_from_dict(
            {"env": "cartpole-swingup", "training": {"total_steps": 10_000}}
        )
        assert pinned.training.total_steps == 10_000

    def test_invalid_json(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_run_config(path)

    def test_non_object_json(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="expected a JSON object"):
            load_run_config(path)

    def test_unknown_keys(self) -> None:
        with pytest.raises(ConfigError):
            run_config_from_dict({"environment": "pendulum"})
        with pytest.raises(ConfigError):
            run_config_from_dict({"training": {"learning-rate": 0.1}})
        with pytest.raises(ConfigError):
            run_config_from_dict({"training": {"loss_terms": {"bonus": True}}})
