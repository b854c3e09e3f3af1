"""Reverse-mode automatic differentiation over dense float64 arrays."""

from pac4sac.diffmath import ops
from pac4sac.diffmath.array import DiffArray, Tape, backward, zero_grads
from pac4sac.diffmath.gradcheck import (
    GradCheckResult,
    check_gradients,
    compare_gradients,
    numerical_gradient,
)

__all__ = [
    "DiffArray",
    "Tape",
    "backward",
    "zero_grads",
    "ops",
    "GradCheckResult",
    "check_gradients",
    "compare_gradients",
    "numerical_gradient",
]
