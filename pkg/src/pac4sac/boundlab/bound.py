"""PAC-Bayes bound on the soft Bellman risk of a Gibbs critic."""

import math
from dataclasses import dataclass
import sys
from enum import Enum

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

from pac4sac.domain import ContractError, DomainError, SampleSizeError


class BoundVariant(StrEnum):
    """Convention for the reward-range constant ``B``."""

    RANGE_WIDTH = "range-width"  # (r_max - r_min)^2
    ABS_SUM = "abs-sum"  # (r_max + |r_min|)^2
    Q_MAX = "q-max"  # Q_max^2


@dataclass(frozen=True, slots=True)
class BoundInputs:
    kl: float
    n: int
    r_min: float
    r_max: float
    delta: float = 0.05
    c1: float = 1.0
    c2: float = 1.0
    empirical_risk: float = 0.0
    correction: float = 0.0
    q_max: float | None = None
    gamma: float | None = None

    def validate(self) -> None:
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta}")
        if self.c1 <= 0.0 or self.c2 <= 0.0:
            raise DomainError("c1 and c2 must be positive")
        if self.kl < 0.0:
            raise DomainError(f"KL divergence cannot be negative, got {self.kl}")
        if self.n < 1:
            raise DomainError(f"sample count must be positive, got {self.n}")
        if self.r_max < self.r_min:
            raise DomainError("r_max is below r_min")
        if self.gamma is not None and not 0.0 <= self.gamma < 1.0:
            raise DomainError(f"gamma must lie in [0, 1), got {self.gamma}")

    def reward_range_constant(self, variant: BoundVariant) -> float:
        match variant:
            case BoundVariant.RANGE_WIDTH:
                b = (self.r_max - self.r_min) ** 2
            case BoundVariant.ABS_SUM:
                b = (self.r_max + abs(self.r_min)) ** 2
            case BoundVariant.Q_MAX:
                if self.q_max is None:
                    raise ContractError("the q-max variant needs q_max")
                b = self.q_max**2
        if b <= 0.0:
            raise DomainError(f"reward-range constant must be positive for {variant}, got {b}")
        return b


@dataclass(frozen=True, slots=True)
class BoundReport:
    variant: BoundVariant
    reward_range_constant: float
    complexity_term: float
    total: float
    value_error_bound: float | None
    minimum_n: int


def minimum_sample_size(reward_range_constant: float, c1: float) -> int:
    """Smallest ``N`` with ``N / (B c1) > 1``."""
    return math.floor(reward_range_constant * c1) + 1


def compute_pac_bound(
    inputs: BoundInputs, variant: BoundVariant = BoundVariant.RANGE_WIDTH
) -> float:
    """``sqrt((log(c2 N / (c1 B delta)) + KL) / (N / (B c1) - 1))``."""
    inputs.validate()
    b = inputs.reward_range_constant(variant)
    denominator = inputs.n / (b * inputs.c1) - 1.0
    if denominator <= 0.0:
        raise SampleSizeError(inputs.n, minimum_sample_size(b, inputs.c1))
    numerator = math.log(inputs.c2 * inputs.n / (inputs.c1 * b * inputs.delta)) + inputs.kl
    if numerator < 0.0:
        raise DomainError(f"bound numerator is negative ({numerator:.6g}); check c1, c2 and delta")
    return math.sqrt(numerator / denominator)


def pac_bound_report(
    inputs: BoundInputs, variant: BoundVariant = BoundVariant.RANGE_WIDTH
) -> BoundReport:
    """Complexity term plus the composed risk bound ``R_N - correction + term``.

    When ``gamma`` is set the risk bound is also converted into a value-error bound by the
    ``1 / (1 - gamma)^2`` factor.
    """
    term = compute_pac_bound(inputs, variant)
    b = inputs.reward_range_constant(variant)
    total = inputs.empirical_risk - inputs.correction + term
    value_error = None if inputs.gamma is None else total / (1.0 - inputs.gamma) ** 2
    return BoundReport(
        variant=variant,
        reward_range_constant=b,
        complexity_term=term,
        total=total,
        value_error_bound=value_error,
        minimum_n=minimum_sample_size(b, inputs.c1),
    )
