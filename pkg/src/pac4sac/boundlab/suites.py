"""Randomized property sweeps over finite MDPs and the bound expression."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from pac4sac.boundlab.bound import BoundInputs, BoundVariant, compute_pac_bound
from pac4sac.boundlab.checks import (
    IMPROVEMENT_SLACK,
    check_lemma1,
    check_policy_improvement_R,
)
from pac4sac.boundlab.counterexample import Counterexample
from pac4sac.boundlab.mdp import random_mdp, random_policy

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class SuiteResult:
    name: str
    instances: int
    violations: int
    counterexamples: tuple[Counterexample, ...] = ()
    messages: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.instances} instances, {self.violations} violations"


def lemma1_sweep(
    instances: int = 500,
    seed: int = 0,
    max_states: int = 6,
    max_actions: int = 3,
    gammas: Sequence[float] = (0.5, 0.9, 0.95),
    alphas: Sequence[float] = (0.0, 0.2, 1.0),
    q_range: float = 10.0,
) -> SuiteResult:
    rng = np.random.default_rng(seed)
    failures: list[Counterexample] = []
    for i in range(instances):
        n_states = int(rng.integers(1, max_states + 1))
        n_actions = int(rng.integers(1, max_actions + 1))
        gamma = float(rng.choice(gammas))
        alpha = float(rng.choice(alphas))
        mdp = random_mdp(rng, n_states, n_actions, gamma)
        policy = random_policy(rng, n_states, n_actions)
        q_hat = rng.uniform(-q_range, q_range, size=(n_states, n_actions))
        result = check_lemma1(mdp, policy, q_hat, alpha)
        if not result.holds:
            failures.append(
                Counterexample(
                    check="lemma1",
                    seed=seed,
                    instance=i,
                    mdp=mdp,
                    policy=policy,
                    q_hat=q_hat,
                    details={"lhs": result.lhs, "rhs": result.rhs, "alpha": alpha},
                )
            )
    logger.info("value-error lemma sweep: %d instances, %d violations", instances, len(failures))
    return SuiteResult("value-error lemma", instances, len(failures), tuple(failures))


def policy_improvement_sweep(
    instances: int = 100,
    sample_counts: Sequence[int] = (1, 2, 8, 32),
    trials: int = 20,
    seed: int = 0,
    n_states: int = 5,
    n_actions: int = 3,
    gammas: Sequence[float] = (0.5, 0.9, 0.95),
) -> SuiteResult:
    """Search-policy improvement per sample count, and lookahead monotonicity across counts."""
    rng = np.random.default_rng(seed)
    counts = sorted(sample_counts)
    failures: list[Counterexample] = []
    for i in range(instances):
        mdp = random_mdp(rng, n_states, n_actions, float(rng.choice(gammas)))
        policy = random_policy(rng, n_states, n_actions)
        results = [check_policy_improvement_R(mdp, policy, r, trials, rng) for r in counts]
        broken = [r.samples for r in results if not r.holds]
        non_monotone = [
            later.samples
            for earlier, later in zip(results, results[1:], strict=False)
            if np.any(later.lookahead_values < earlier.lookahead_values - IMPROVEMENT_SLACK)
        ]
        if broken or non_monotone:
            failures.append(
                Counterexample(
                    check="policy-improvement",
                    seed=seed,
                    instance=i,
                    mdp=mdp,
                    policy=policy,
                    samples=(broken or non_monotone)[0],
                    details={"violated": broken, "non_monotone": non_monotone},
                )
            )
    logger.info("policy improvement sweep: %d instances, %d violations", instances, len(failures))
    return SuiteResult("search-policy improvement", instances, len(failures), tuple(failures))


def bound_monotonicity_grid(
    points_per_axis: int = 10,
    variant: BoundVariant = BoundVariant.RANGE_WIDTH,
    r_min: float = 0.0,
    r_max: float = 1.0,
) -> SuiteResult:
    """The complexity term rises with KL and falls with N and with delta on every grid line."""
    kls = np.linspace(0.0, 50.0, points_per_axis)
    ns = np.unique(np.geomspace(100, 1_000_000, points_per_axis).astype(np.int64))
    deltas = np.linspace(0.01, 0.5, points_per_axis)
    grid = np.empty((kls.size, ns.size, deltas.size))
    for i, kl in enumerate(kls):
        for j, n in enumerate(ns):
            for k, delta in enumerate(deltas):
                inputs = BoundInputs(
                    kl=float(kl), n=int(n), r_min=r_min, r_max=r_max, delta=float(delta)
                )
                grid[i, j, k] = compute_pac_bound(inputs, variant)

    messages: list[str] = []
    checks = (
        ("kl", np.diff(grid, axis=0) > 0.0),
        ("n", np.diff(grid, axis=1) < 0.0),
        ("delta", np.diff(grid, axis=2) < 0.0),
    )
    violations = 0
    for axis, ok in checks:
        bad = int(np.count_nonzero(~ok))
        violations += bad
        if bad:
            messages.append(f"{bad} grid steps break monotonicity in {axis}")
    logger.info("bound monotonicity grid: %d points, %d violations", grid.size, violations)
    return SuiteResult("bound monotonicity", int(grid.size), violations, (), tuple(messages))
