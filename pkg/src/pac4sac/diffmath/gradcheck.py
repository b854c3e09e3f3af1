"""Central finite-difference gradient checking."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from pac4sac.diffmath.array import DiffArray, Tape
from pac4sac.domain import FloatArray


@dataclass(frozen=True, slots=True)
class GradCheckResult:
    max_abs_error: float
    max_rel_error: float
    passed: bool


def numerical_gradient(
    f: Callable[[], float], x: FloatArray, eps: float = 1e-5
) -> FloatArray:
    """Perturb ``x`` in place one element at a time; ``x`` is restored afterwards."""
    grad = np.zeros_like(x)
    flat = x.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + eps
        upper = f()
        flat[i] = original - eps
        lower = f()
        flat[i] = original
        out[i] = (upper - lower) / (2.0 * eps)
    return grad


def analytic_gradients(
    build: Callable[[], DiffArray], inputs: Sequence[DiffArray]
) -> list[FloatArray]:
    with Tape() as tape:
        tape.watch(*inputs)
        for array in inputs:
            array.zero_grad()
        tape.backward(build())
        grads = [array.grad.copy() for array in inputs]
    for array in inputs:
        array.zero_grad()
    return grads


def compare_gradients(
    analytic: FloatArray,
    numeric: FloatArray,
    rtol: float = 1e-4,
    atol: float = 1e-6,
) -> GradCheckResult:
    abs_err = np.abs(analytic - numeric)
    scale = np.maximum(np.abs(analytic), np.abs(numeric))
    rel_err = np.where(scale > 0.0, abs_err / np.where(scale > 0.0, scale, 1.0), 0.0)
    ok = (abs_err <= atol) | (rel_err <= rtol)
    return GradCheckResult(
        max_abs_error=float(abs_err.max(initial=0.0)),
        max_rel_error=float(np.where(abs_err <= atol, 0.0, rel_err).max(initial=0.0)),
        passed=bool(ok.all()),
    )


def check_gradients(
    build: Callable[[], DiffArray],
    inputs: Sequence[DiffArray],
    eps: float = 1e-5,
    rtol: float = 1e-4,
    atol: float = 1e-6,
) -> GradCheckResult:
    """Compare reverse-mode gradients of a scalar ``build()`` with central differences.

    ``build`` must recompute its output from the current values of ``inputs``.
    """
    analytic = analytic_gradients(build, inputs)
    worst_abs, worst_rel, passed = 0.0, 0.0, True
    for array, grad in zip(inputs, analytic, strict=True):
        numeric = numerical_gradient(lambda: build().item(), array.values, eps)
        result = compare_gradients(grad, numeric, rtol=rtol, atol=atol)
        worst_abs = max(worst_abs, result.max_abs_error)
        worst_rel = max(worst_rel, result.max_rel_error)
        passed = passed and result.passed
    return GradCheckResult(max_abs_error=worst_abs, max_rel_error=worst_rel, passed=passed)
