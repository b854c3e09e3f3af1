"""``pac4sac`` command line: train, ablate, sweep-r, verify and plot."""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pac4sac.domain import ConfigError, Pac4SacError
from pac4sac.harness.ablation import run_ablation
from pac4sac.harness.config import RunConfig, load_run_config
from pac4sac.harness.metrics import format_report
from pac4sac.harness.plot import plot_directory
from pac4sac.harness.runner import run_training
from pac4sac.harness.sweep import run_shooting_sweep
from pac4sac.harness.verify import run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

# flag destination -> RunConfig.with_overrides key
_OVERRIDES = {
    "env": "env",
    "algo": "algorithm",
    "steps": "total_steps",
    "seeds": "seeds",
    "R": "action_samples",
    "xi": "xi",
    "alpha": "alpha",
    "tau": "tau",
    "lr": "learning_rate",
    "batch": "batch_size",
    "buffer": "buffer_capacity",
    "warmup": "warmup_steps",
    "out": "output_dir",
    "workers": "workers",
}


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON run configuration; flags override it")
    parser.add_argument("--env", help="environment name (pendulum, cartpole-swingup)")
    parser.add_argument("--algo", help="pac4sac or sac")
    parser.add_argument("--steps", type=int, help="environment steps per seed")
    parser.add_argument("--seeds", type=parse_int_list, help="comma-separated seeds, e.g. 0,1,2")
    parser.add_argument("--R", type=int, help="actor samples per action (random search)")
    parser.add_argument("--xi", type=float, help="variance correction weight")
    parser.add_argument("--alpha", type=float, help="entropy temperature")
    parser.add_argument("--tau", type=float, help="target network update rate")
    parser.add_argument("--lr", type=float, help="Adam learning rate")
    parser.add_argument("--batch", type=int, help="minibatch size")
    parser.add_argument("--buffer", type=int, help="replay buffer capacity")
    parser.add_argument("--warmup", type=int, help="uniform-action steps before updates start")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--workers", type=int, help="parallel seed workers")
    parser.add_argument("--quiet", action="store_true", help="do not echo finished episodes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pac4sac", description="PAC-Bayesian soft actor-critic experiments"
    )
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="root logger level",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    _add_run_flags(commands.add_parser("train", help="train one algorithm over seeds"))
    _add_run_flags(commands.add_parser("ablate", help="critic loss-term ablation (pac4sac)"))
    sweep = commands.add_parser("sweep-r", help="train pac4sac once per action-sample count")
    _add_run_flags(sweep)
    sweep.add_argument(
        "--r-list", type=parse_int_list, default=[1, 8, 64], help="comma-separated R values"
    )

    verify = commands.add_parser("verify", help="gradient, closed-form and boundlab checks")
    verify.add_argument("--out", type=Path, help="directory for counterexample JSON")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--gradient-instances", type=int, default=20)
    verify.add_argument("--kl-samples", type=int, default=1_000_000)
    verify.add_argument("--lemma-instances", type=int, default=500)
    verify.add_argument("--improvement-instances", type=int, default=100)

    plot = commands.add_parser("plot", help="render SVG curves from run CSVs")
    plot.add_argument("directory", type=Path, nargs="?", default=Path("runs"))
    return parser


def resolve_run_config(args: argparse.Namespace) -> RunConfig:
    """File values first, then every flag that was given."""
    base = load_run_config(args.config) if args.config is not None else RunConfig()
    overrides: dict[str, Any] = {key: getattr(args, flag) for flag, key in _OVERRIDES.items()}
    config = base.with_overrides(**overrides)
    config.validate()
    return config


def _run(args: argparse.Namespace) -> int:
    match args.command:
        case "train":
            report = run_training(resolve_run_config(args), echo=not args.quiet)
            print(format_report(report))
        case "ablate":
            for row in run_ablation(resolve_run_config(args), echo=not args.quiet):
                print(f"{row.terms.label}: {format_report(row.report)}")
        case "sweep-r":
            config = resolve_run_config(args)
            for sweep_row in run_shooting_sweep(config, args.r_list, echo=not args.quiet):
                print(f"R={sweep_row.samples}: {format_report(sweep_row.report)}")
        case "verify":
            verify_report = run_verify(
                output_dir=args.out,
                seed=args.seed,
                gradient_instances=args.gradient_instances,
                kl_samples=args.kl_samples,
                lemma_instances=args.lemma_instances,
                improvement_instances=args.improvement_instances,
            )
            print(verify_report.summary())
            if not verify_report.passed:
                return EXIT_VERIFY_FAILED
        case "plot":
            if not args.directory.is_dir():
                raise ConfigError(f"{args.directory} is not a directory")
            for path in plot_directory(args.directory):
                print(path)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        return _run(args)
    except Pac4SacError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
