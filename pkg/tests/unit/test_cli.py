"""Tests for the command line parser and its exit codes."""

import argparse
import json
from pathlib import Path

import pytest

from pac4sac.domain import Algorithm
from pac4sac.harness import cli
from pac4sac.harness.cli import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    build_parser,
    main,
    parse_int_list,
    resolve_run_config,
)


class _FakeVerifyReport:
    def __init__(self, passed: bool) -> None:
        self.passed = passed

    def summary(self) -> str:
        return "[PASS] fake" if self.passed else "[FAIL] fake"


class TestParseIntList:
    def test_comma_separated(self) -> None:
        assert parse_int_list("1,8, 64") == [1, 8, 64]

    def test_rejects_non_integers(self) -> None:
        with pytest.raises(argparse.ArgumentTypeError):
            parse_int_list("1,x")

    def test_rejects_empty(self) -> None:
        with pytest.raises(argparse.ArgumentTypeError):
            parse_int_list(",")


class TestParser:
    def test_train_flags(self) -> None:
        args = build_parser().parse_args(
            ["train", "--algo", "sac", "--steps", "500", "--seeds", "0,1", "--R", "4"]
        )
        assert args.command == "train"
        assert args.algo == "sac"
        assert args.steps == 500
        assert args.seeds == [0, 1]
        assert args.R == 4
        assert not args.quiet

    def test_sweep_default_r_list(self) -> None:
        assert build_parser().parse_args(["sweep-r"]).r_list == [1, 8, 64]

    def test_verify_defaults(self) -> None:
        args = build_parser().parse_args(["verify"])
        assert args.seed == 0
        assert args.kl_samples == 1_000_000
        assert args.out is None

    def test_plot_default_directory(self) -> None:
        assert build_parser().parse_args(["plot"]).directory == Path("runs")

    def test_command_is_required(self) -> None:
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args([])
        assert excinfo.value.code == 2


class TestResolveRunConfig:
    def test_flags_map_onto_config(self) -> None:
        flags = ["--algo", "sac", "--xi", "0.05", "--lr", "3e-4", "--out", "x", "--workers", "2"]
        args = build_parser().parse_args(["train", *flags])
        config = resolve_run_config(args)
        assert config.algorithm is Algorithm.SAC
        assert config.training.xi == 0.05
        assert config.training.learning_rate == 3e-4
        assert config.output_dir == Path("x")
        assert config.workers == 2

    def test_flags_override_file_values(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seeds": [4, 5], "training": {"alpha": 0.5, "xi": 0.3}}))
        args = build_parser().parse_args(["train", "--config", str(path), "--xi", "0.1"])
        config = resolve_run_config(args)
        assert config.seeds == (4, 5)
        assert config.training.alpha == 0.5
        assert config.training.xi == 0.1


class TestMain:
    def test_unknown_environment_is_a_usage_error(self, tmp_path: Path) -> None:
        assert main(["train", "--env", "hopper", "--out", str(tmp_path)]) == EXIT_USAGE

    def test_invalid_hyperparameter_is_a_usage_error(self, tmp_path: Path) -> None:
        assert main(["train", "--R", "0", "--out", str(tmp_path)]) == EXIT_USAGE

    def test_plot_on_missing_directory(self, tmp_path: Path) -> None:
        assert main(["plot", str(tmp_path / "missing")]) == EXIT_USAGE

    def test_sweep_rejects_the_sac_baseline(self, tmp_path: Path) -> None:
        code = main(["sweep-r", "--algo", "sac", "--r-list", "1,4", "--out", str(tmp_path)])
        assert code == EXIT_USAGE
        assert not (tmp_path / "R_1").exists()

    def test_verify_exit_codes(
        self, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
    ) -> None:
        monkeypatch.setattr(cli, "run_verify", lambda **_: _FakeVerifyReport(True))
        assert main(["verify"]) == EXIT_OK
        assert "[PASS] fake" in capsys.readouterr().out

        monkeypatch.setattr(cli, "run_verify", lambda **_: _FakeVerifyReport(False))
        assert main(["verify"]) == EXIT_VERIFY_FAILED

    def test_train_runs_end_to_end(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        code = main(
            [
                "train",
                "--algo",
                "sac",
                "--steps",
                "210",
                "--warmup",
                "205",
                "--batch",
                "4",
                "--out",
                str(tmp_path),
                "--quiet",
            ]
        )
        assert code == EXIT_OK
        assert "sac on pendulum over 1 seed(s)" in capsys.readouterr().out
        assert (tmp_path / "metrics.json").exists()
