"""Tests for the bound expression and its reward-range conventions."""

import math

import pytest

from pac4sac.boundlab import (
    BoundInputs,
    BoundVariant,
    compute_pac_bound,
    minimum_sample_size,
    pac_bound_report,
)
from pac4sac.domain import ContractError, DomainError, SampleSizeError


def _inputs(**changes: object) -> BoundInputs:
    base: dict[str, object] = {"kl": 5.0, "n": 10_000, "r_min": 0.0, "r_max": 1.0}
    base.update(changes)
    return BoundInputs(**base)  # type: ignore[arg-type]


class TestComputePacBound:
    def test_regression_value(self) -> None:
        expected = math.sqrt((math.log(2e5) + 5.0) / 9999.0)
        assert compute_pac_bound(_inputs()) == pytest.approx(expected, rel=1e-12)
        assert compute_pac_bound(_inputs()) == pytest.approx(0.0414823, abs=1e-7)

    def test_zero_kl_keeps_the_log_term(self) -> None:
        expected = math.sqrt(math.log(2e5) / 9999.0)
        assert compute_pac_bound(_inputs(kl=0.0)) == pytest.approx(expected)

    def test_non_positive_denominator(self) -> None:
        with pytest.raises(SampleSizeError) as excinfo:
            compute_pac_bound(_inputs(n=1))
        assert excinfo.value.minimum_n == 2
        assert excinfo.value.n == 1

    def test_pendulum_needs_many_samples(self) -> None:
        b = 16.2736044**2
        minimum = minimum_sample_size(b, 1.0)
        assert minimum == math.floor(b) + 1
        with pytest.raises(SampleSizeError):
            compute_pac_bound(_inputs(n=minimum - 1, r_min=-16.2736044, r_max=0.0))
        assert compute_pac_bound(_inputs(n=10 * minimum, r_min=-16.2736044, r_max=0.0)) > 0.0

    @pytest.mark.parametrize(
        "changes",
        [{"delta": 0.0}, {"delta": 1.0}, {"kl": -0.1}, {"c1": 0.0}, {"r_min": 2.0}],
    )
    def test_invalid_inputs(self, changes: dict[str, float]) -> None:
        with pytest.raises(DomainError):
            compute_pac_bound(_inputs(**changes))

    def test_monotone_in_kl_n_and_delta(self) -> None:
        assert compute_pac_bound(_inputs(kl=6.0)) > compute_pac_bound(_inputs())
        assert compute_pac_bound(_inputs(n=20_000)) < compute_pac_bound(_inputs())
        assert compute_pac_bound(_inputs(delta=0.1)) < compute_pac_bound(_inputs())


class TestVariants:
    def test_range_width_and_abs_sum_agree_for_negative_rewards(self) -> None:
        inputs = _inputs(n=100_000, r_min=-3.0, r_max=0.0)
        range_width = compute_pac_bound(inputs, BoundVariant.RANGE_WIDTH)
        assert compute_pac_bound(inputs, BoundVariant.ABS_SUM) == pytest.approx(range_width)

    def test_abs_sum_is_wider_for_positive_rewards(self) -> None:
        inputs = _inputs(n=100_000, r_min=1.0, r_max=2.0)
        assert inputs.reward_range_constant(BoundVariant.RANGE_WIDTH) == 1.0
        assert inputs.reward_range_constant(BoundVariant.ABS_SUM) == 9.0

    def test_q_max_variant(self) -> None:
        inputs = _inputs(n=100_000, q_max=10.0)
        assert inputs.reward_range_constant(BoundVariant.Q_MAX) == 100.0
        with pytest.raises(ContractError):
            _inputs().reward_range_constant(BoundVariant.Q_MAX)

    def test_zero_reward_range_is_rejected(self) -> None:
        with pytest.raises(DomainError):
            compute_pac_bound(_inputs(r_min=0.5, r_max=0.5))


class TestReport:
    def test_composes_risk_terms(self) -> None:
        report = pac_bound_report(_inputs(empirical_risk=0.5, correction=0.1))
        assert report.complexity_term == pytest.approx(compute_pac_bound(_inputs()))
        assert report.total == pytest.approx(0.4 + report.complexity_term)
        assert report.minimum_n == 2
        assert report.value_error_bound is None

    def test_value_error_scaling(self) -> None:
        report = pac_bound_report(_inputs(gamma=0.9))
        assert report.value_error_bound == pytest.approx(report.total / 0.01)
