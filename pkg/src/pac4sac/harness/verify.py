"""Numerical self-checks: gradients, closed forms, loss regressions and the boundlab sweeps."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from pac4sac.agents.losses import pac_critic_loss, policy_improvement_loss
from pac4sac.boundlab import (
    BoundInputs,
    Counterexample,
    SuiteResult,
    bound_monotonicity_grid,
    compute_pac_bound,
    dump_counterexamples,
    lemma1_sweep,
    policy_improvement_sweep,
)
from pac4sac.diffmath import DiffArray, check_gradients, ops
from pac4sac.domain import FloatArray, LossTerms
from pac4sac.envs import PENDULUM_SPEC
from pac4sac.nets import CriticNet, GaussianLinearLayer, SquashedGaussianPolicy

logger = logging.getLogger(__name__)

COUNTEREXAMPLES_FILE = "counterexamples.json"
LOSS_RTOL = 1e-3
PRIMITIVE_RTOL = 1e-4
KL_TOLERANCE = 0.01
REGRESSION_TOLERANCE = 1e-12

Build = Callable[[], DiffArray]
CaseFactory = Callable[[np.random.Generator], tuple[Build, list[DiffArray]]]


@dataclass(frozen=True, slots=True)
class VerifyReport:
    suites: tuple[SuiteResult, ...]

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    @property
    def counterexamples(self) -> list[Counterexample]:
        return [c for suite in self.suites for c in suite.counterexamples]

    def summary(self) -> str:
        lines = [suite.summary() for suite in self.suites]
        for suite in self.suites:
            lines.extend(f"  {suite.name}: {message}" for message in suite.messages)
        lines.append("verify: PASS" if self.passed else "verify: FAIL")
        return "\n".join(lines)


def _weighted_sum(
    fn: Callable[..., DiffArray], rng: np.random.Generator, *inputs: DiffArray
) -> Build:
    weights = rng.standard_normal(fn(*inputs).shape)

    def build() -> DiffArray:
        return ops.sum(ops.mul(fn(*inputs), weights))

    return build


def _uniform(rng: np.random.Generator, shape: tuple[int, ...], low: float = -2.0) -> DiffArray:
    return DiffArray(rng.uniform(low, 2.0, size=shape))


def _unary(
    op: Callable[[DiffArray], DiffArray], low: float = -2.0, shape: tuple[int, ...] = (3, 4)
) -> CaseFactory:
    def factory(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
        x = _uniform(rng, shape, low=low)
        return _weighted_sum(op, rng, x), [x]

    return factory


def _binary(
    op: Callable[[DiffArray, DiffArray], DiffArray],
    left: tuple[int, ...],
    right: tuple[int, ...],
    right_low: float = -2.0,
) -> CaseFactory:
    def factory(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
        x, y = _uniform(rng, left), _uniform(rng, right, low=right_low)
        return _weighted_sum(op, rng, x, y), [x, y]

    return factory


def _clamp_case(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
    values = rng.uniform(-2.0, 2.0, size=(3, 4))
    values = np.where(np.abs(np.abs(values) - 1.0) < 1e-2, values + 0.05, values)
    x = DiffArray(values)
    return _weighted_sum(lambda a: ops.clamp(a, -1.0, 1.0), rng, x), [x]


def _minimum_case(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
    first = rng.uniform(-2.0, 2.0, size=(3, 4))
    gap = rng.uniform(0.05, 1.0, size=(3, 4)) * rng.choice([-1.0, 1.0], size=(3, 4))
    x, y = DiffArray(first), DiffArray(first + gap)
    return _weighted_sum(ops.minimum, rng, x, y), [x, y]


def _concat_case(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
    x, y = _uniform(rng, (3, 2)), _uniform(rng, (3, 3))
    return _weighted_sum(lambda a, b: ops.concat([a, b], axis=1), rng, x, y), [x, y]


PRIMITIVE_CASES: dict[str, CaseFactory] = {
    "add": _binary(ops.add, (3, 4), (4,)),
    "sub": _binary(ops.sub, (3, 4), (3, 1)),
    "mul": _binary(ops.mul, (3, 4), (3, 4)),
    "divide": _binary(ops.divide, (3, 4), (3, 4), right_low=0.5),
    "neg": _unary(ops.neg),
    "square": _unary(ops.square),
    "exp": _unary(ops.exp),
    "log": _unary(ops.log, low=0.5),
    "sqrt": _unary(ops.sqrt, low=0.5),
    "tanh": _unary(ops.tanh),
    "silu": _unary(ops.silu),
    "layer_norm": _unary(ops.layer_norm),
    "clamp": _clamp_case,
    "minimum": _minimum_case,
    "sum": _unary(lambda a: ops.sum(a, axis=0)),
    "mean": _unary(lambda a: ops.mean(a, axis=1, keepdims=True)),
    "broadcast_to": _unary(lambda a: ops.broadcast_to(a, (3, 4)), shape=(1, 4)),
    "reshape": _unary(lambda a: ops.reshape(a, (2, 6))),
    "transpose": _unary(ops.transpose),
    "matmul": _binary(ops.matmul, (3, 4), (4, 2)),
    "concat": _concat_case,
    "take_columns": _unary(lambda a: ops.take_columns(a, 1, 3)),
}


def _small_nets(rng: np.random.Generator) -> tuple[SquashedGaussianPolicy, CriticNet]:
    actor = SquashedGaussianPolicy(PENDULUM_SPEC, rng, width=8)
    critic = CriticNet(
        PENDULUM_SPEC.state_dim,
        PENDULUM_SPEC.action_dim,
        rng,
        probabilistic=True,
        width=8,
        init_log_std=-2.0,
    )
    return actor, critic


def _critic_loss_case(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
    _, critic = _small_nets(rng)
    batch = 6
    states = rng.uniform(-1.0, 1.0, size=(batch, PENDULUM_SPEC.state_dim))
    actions = rng.uniform(-2.0, 2.0, size=(batch, PENDULUM_SPEC.action_dim))
    noise = rng.standard_normal((batch, critic.weight_count))
    targets = rng.uniform(-5.0, 0.0, size=batch)

    def build() -> DiffArray:
        q = critic.forward_sampled(states, actions, noise)
        return pac_critic_loss(q, targets, critic.kl_divergence(), 100, 0.99, 0.01)

    return build, list(critic.parameters().values())


def _actor_loss_case(rng: np.random.Generator) -> tuple[Build, list[DiffArray]]:
    actor, critic = _small_nets(rng)
    states = rng.uniform(-1.0, 1.0, size=(6, PENDULUM_SPEC.state_dim))
    seed = int(rng.integers(2**31))

    def build() -> DiffArray:
        actor_rng, critic_rng = (np.random.default_rng(s) for s in (seed, seed + 1))
        return policy_improvement_loss(states, actor, critic, 0.2, actor_rng, critic_rng)

    return build, list(actor.parameters().values())


LOSS_CASES: dict[str, CaseFactory] = {
    "pac_critic_loss": _critic_loss_case,
    "policy_improvement_loss": _actor_loss_case,
}


def gradient_suite(instances: int = 20, seed: int = 0) -> SuiteResult:
    """Finite-difference checks of every primitive and of both training losses."""
    rng = np.random.default_rng(seed)
    messages: list[str] = []
    checked = 0
    for cases, rtol in ((PRIMITIVE_CASES, PRIMITIVE_RTOL), (LOSS_CASES, LOSS_RTOL)):
        for name, factory in cases.items():
            worst = 0.0
            failed = 0
            for _ in range(instances):
                build, inputs = factory(rng)
                result = check_gradients(build, inputs, rtol=rtol)
                worst = max(worst, result.max_rel_error)
                failed += not result.passed
                checked += 1
            if failed:
                messages.append(f"{name}: {failed}/{instances} failed, worst rel error {worst:.2e}")
            logger.debug("gradient check %s: worst relative error %.2e", name, worst)
    logger.info("gradient suite: %d checks, %d operations failing", checked, len(messages))
    return SuiteResult("gradients", checked, len(messages), (), tuple(messages))


def monte_carlo_kl(layer: GaussianLinearLayer, samples: int, rng: np.random.Generator) -> float:
    """``E_q[log q(w) - log p(w)]`` estimated from ``samples`` weight draws."""
    means = np.concatenate([layer.weight_mean.values.ravel(), layer.bias_mean.values.ravel()])
    stds = np.exp(
        np.concatenate([layer.weight_log_std.values.ravel(), layer.bias_log_std.values.ravel()])
    )
    total = 0.0
    chunk = 100_000
    for start in range(0, samples, chunk):
        count = min(chunk, samples - start)
        w = means + stds * rng.standard_normal((count, means.size))
        log_ratio = stats.norm.logpdf(w, means, stds) - stats.norm.logpdf(w, 0.0, layer.prior_std)
        total += float(np.sum(log_ratio))
    return total / samples


def kl_monte_carlo_suite(
    posteriors: int = 10, samples: int = 1_000_000, seed: int = 0
) -> SuiteResult:
    rng = np.random.default_rng(seed)
    messages: list[str] = []
    for i in range(posteriors):
        layer = GaussianLinearLayer(3, 2, rng, prior_std=float(rng.uniform(0.5, 2.0)))
        layer.weight_mean.values[...] = rng.uniform(-1.0, 1.0, size=layer.weight_mean.shape)
        layer.bias_mean.values[...] = rng.uniform(-1.0, 1.0, size=layer.bias_mean.shape)
        layer.weight_log_std.values[...] = rng.uniform(-2.0, -0.5, size=layer.weight_mean.shape)
        layer.bias_log_std.values[...] = rng.uniform(-2.0, -0.5, size=layer.bias_mean.shape)
        closed = layer.kl_divergence().item()
        estimate = monte_carlo_kl(layer, samples, rng)
        if abs(estimate - closed) > KL_TOLERANCE * abs(closed):
            messages.append(f"posterior {i}: closed form {closed:.6f}, Monte-Carlo {estimate:.6f}")
    logger.info("KL closed form: %d posteriors, %d mismatches", posteriors, len(messages))
    return SuiteResult("KL closed form", posteriors, len(messages), (), tuple(messages))


def _regression_checks() -> dict[str, tuple[float, float]]:
    q = DiffArray(np.array([0.0, 2.0]))
    targets: FloatArray = np.zeros(2)
    full = pac_critic_loss(q, targets, 0.0, 1, gamma=0.99, xi=0.01).item()
    bound = compute_pac_bound(BoundInputs(kl=5.0, n=10_000, r_min=0.0, r_max=1.0, delta=0.05))
    return {
        "critic loss on [0, 2]": (full, 2.0 - 0.99 * 0.01 * 1.0),
        "complexity term": (bound, math.sqrt((math.log(2e5) + 5.0) / 9999.0)),
    }


def loss_regression_suite() -> SuiteResult:
    """Frozen values, plus the sign of the variance correction."""
    messages = [
        f"{name}: got {got!r}, expected {expected!r}"
        for name, (got, expected) in _regression_checks().items()
        if abs(got - expected) > REGRESSION_TOLERANCE
    ]
    q = DiffArray(np.array([-1.0, 0.5, 3.0]))
    targets: FloatArray = np.zeros(3)
    with_correction = pac_critic_loss(q, targets, 1.0, 10, 0.99, 0.1).item()
    without = pac_critic_loss(
        q, targets, 1.0, 10, 0.99, 0.1, terms=LossTerms(correction=False)
    ).item()
    if not with_correction < without:
        messages.append("variance correction does not lower the loss on a spread batch")
    return SuiteResult("loss regressions", 3, len(messages), (), tuple(messages))


def run_verify(
    output_dir: Path | None = None,
    seed: int = 0,
    gradient_instances: int = 20,
    kl_samples: int = 1_000_000,
    lemma_instances: int = 500,
    improvement_instances: int = 100,
) -> VerifyReport:
    suites = (
        gradient_suite(gradient_instances, seed),
        kl_monte_carlo_suite(samples=kl_samples, seed=seed),
        loss_regression_suite(),
        lemma1_sweep(lemma_instances, seed=seed),
        policy_improvement_sweep(improvement_instances, seed=seed),
        bound_monotonicity_grid(),
    )
    report = VerifyReport(suites)
    if output_dir is not None and report.counterexamples:
        path = output_dir / COUNTEREXAMPLES_FILE
        dump_counterexamples(path, report.counterexamples)
        logger.warning("wrote %d counterexamples to %s", len(report.counterexamples), path)
    return report
