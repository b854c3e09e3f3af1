"""Primitive differentiable operations.

Every primitive computes its forward value with numpy and, when at least one
operand is tracked, records a backward rule on that operand's tape. Untracked
operands are treated as constants. Binary elementwise operations follow numpy
broadcasting; gradients are summed back to each operand's shape.
"""

from collections.abc import Sequence
from typing import Any

import numpy as np
from scipy.special import expit

from pac4sac.diffmath.array import BackwardFn, DiffArray, Tape
from pac4sac.domain import ContractError, DimensionError, DomainError, FloatArray

LAYER_NORM_EPS = 1e-5


def as_array(value: Any) -> DiffArray:
    if isinstance(value, DiffArray):
        return value
    return DiffArray(value)


def _active_tape(*arrays: DiffArray) -> Tape | None:
    tape: Tape | None = None
    for array in arrays:
        if not array.is_tracked:
            continue
        if tape is None:
            tape = array.tape
        elif array.tape is not tape:
            raise ContractError("operands are recorded on different tapes")
    return tape


def _result(values: FloatArray, parents: tuple[DiffArray, ...], rule: BackwardFn) -> DiffArray:
    tape = _active_tape(*parents)
    if tape is None:
        return DiffArray(values)
    return tape.record(values, parents, rule)


def unbroadcast(grad: FloatArray, shape: tuple[int, ...]) -> FloatArray:
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad.reshape(shape)


def _check_broadcast(a: DiffArray, b: DiffArray) -> None:
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError as exc:
        raise DimensionError("operands do not broadcast", a.shape, b.shape) from exc


def add(a: Any, b: Any) -> DiffArray:
    x, y = as_array(a), as_array(b)
    _check_broadcast(x, y)

    def rule(g: FloatArray) -> tuple[FloatArray, FloatArray]:
        return unbroadcast(g, x.shape), unbroadcast(g, y.shape)

    return _result(x.values + y.values, (x, y), rule)


def sub(a: Any, b: Any) -> DiffArray:
    x, y = as_array(a), as_array(b)
    _check_broadcast(x, y)

    def rule(g: FloatArray) -> tuple[FloatArray, FloatArray]:
        return unbroadcast(g, x.shape), unbroadcast(-g, y.shape)

    return _result(x.values - y.values, (x, y), rule)


def mul(a: Any, b: Any) -> DiffArray:
    x, y = as_array(a), as_array(b)
    _check_broadcast(x, y)

    def rule(g: FloatArray) -> tuple[FloatArray, FloatArray]:
        return unbroadcast(g * y.values, x.shape), unbroadcast(g * x.values, y.shape)

    return _result(x.values * y.values, (x, y), rule)


def divide(a: Any, b: Any) -> DiffArray:
    x, y = as_array(a), as_array(b)
    _check_broadcast(x, y)
    if np.any(y.values == 0.0):
        raise DomainError("division by zero")
    out = x.values / y.values

    def rule(g: FloatArray) -> tuple[FloatArray, FloatArray]:
        return (
            unbroadcast(g / y.values, x.shape),
            unbroadcast(-g * out / y.values, y.shape),
        )

    return _result(out, (x, y), rule)


def neg(a: Any) -> DiffArray:
    x = as_array(a)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (-g,)

    return _result(-x.values, (x,), rule)


def square(a: Any) -> DiffArray:
    x = as_array(a)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (2.0 * x.values * g,)

    return _result(x.values * x.values, (x,), rule)


def exp(a: Any) -> DiffArray:
    x = as_array(a)
    out = np.exp(x.values)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (g * out,)

    return _result(out, (x,), rule)


def log(a: Any) -> DiffArray:
    x = as_array(a)
    if np.any(x.values <= 0.0):
        raise DomainError(f"log of non-positive value (min {x.values.min():.3e})")

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (g / x.values,)

    return _result(np.log(x.values), (x,), rule)


def sqrt(a: Any) -> DiffArray:
    x = as_array(a)
    if np.any(x.values < 0.0):
        raise DomainError(f"sqrt of negative value (min {x.values.min():.3e})")
    out = np.sqrt(x.values)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        # zero subgradient at the origin
        safe = np.where(out > 0.0, out, 1.0)
        return (np.where(out > 0.0, 0.5 * g / safe, 0.0),)

    return _result(out, (x,), rule)


def clamp(a: Any, low: float, high: float) -> DiffArray:
    """Clip into [low, high]; gradient passes inside the interval, boundary included."""
    if low > high:
        raise ContractError(f"clamp interval is empty: [{low}, {high}]")
    x = as_array(a)
    inside = (x.values >= low) & (x.values <= high)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (np.where(inside, g, 0.0),)

    return _result(np.clip(x.values, low, high), (x,), rule)


def minimum(a: Any, b: Any) -> DiffArray:
    """Elementwise minimum; ties route the gradient to the first operand."""
    x, y = as_array(a), as_array(b)
    _check_broadcast(x, y)
    first = x.values <= y.values

    def rule(g: FloatArray) -> tuple[FloatArray, FloatArray]:
        return (
            unbroadcast(np.where(first, g, 0.0), x.shape),
            unbroadcast(np.where(first, 0.0, g), y.shape),
        )

    return _result(np.minimum(x.values, y.values), (x, y), rule)


def sum(a: Any, axis: int | None = None, keepdims: bool = False) -> DiffArray:
    x = as_array(a)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, x.shape).copy(),)

    return _result(np.sum(x.values, axis=axis, keepdims=keepdims), (x,), rule)


def mean(a: Any, axis: int | None = None, keepdims: bool = False) -> DiffArray:
    x = as_array(a)
    count = x.size if axis is None else x.shape[axis]

    def rule(g: FloatArray) -> tuple[FloatArray]:
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g / count, x.shape).copy(),)

    return _result(np.mean(x.values, axis=axis, keepdims=keepdims), (x,), rule)


def broadcast_to(a: Any, shape: Sequence[int]) -> DiffArray:
    x = as_array(a)
    target = tuple(shape)
    try:
        out = np.broadcast_to(x.values, target).copy()
    except ValueError as exc:
        raise DimensionError("cannot broadcast", x.shape, target) from exc

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (unbroadcast(g, x.shape),)

    return _result(out, (x,), rule)


def reshape(a: Any, shape: Sequence[int]) -> DiffArray:
    x = as_array(a)
    try:
        out = x.values.reshape(tuple(shape))
    except ValueError as exc:
        raise DimensionError("cannot reshape", x.shape, tuple(shape)) from exc

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (g.reshape(x.shape),)

    return _result(out, (x,), rule)


def transpose(a: Any) -> DiffArray:
    x = as_array(a)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (g.T,)

    return _result(x.values.T.copy(), (x,), rule)


def matmul(a: Any, b: Any) -> DiffArray:
    x, y = as_array(a), as_array(b)
    if x.values.ndim != 2 or y.values.ndim != 2 or x.shape[1] != y.shape[0]:
        raise DimensionError("matmul inner dimensions disagree", x.shape, y.shape)

    def rule(g: FloatArray) -> tuple[FloatArray, FloatArray]:
        return g @ y.values.T, x.values.T @ g

    return _result(x.values @ y.values, (x, y), rule)


def concat(arrays: Sequence[Any], axis: int = -1) -> DiffArray:
    parts = tuple(as_array(a) for a in arrays)
    if not parts:
        raise ContractError("concat needs at least one array")
    try:
        out = np.concatenate([p.values for p in parts], axis=axis)
    except ValueError as exc:
        raise DimensionError("cannot concatenate", parts[0].shape, parts[-1].shape) from exc
    bounds = np.cumsum([p.shape[axis] for p in parts])[:-1]

    def rule(g: FloatArray) -> list[FloatArray]:
        return list(np.split(g, bounds, axis=axis))

    return _result(out, parts, rule)


def take_columns(a: Any, start: int, stop: int) -> DiffArray:
    """Slice ``[start, stop)`` along the last axis."""
    x = as_array(a)
    width = x.shape[-1]
    if not 0 <= start < stop <= width:
        raise DimensionError(f"column slice [{start}, {stop}) out of range", x.shape, None)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        full = np.zeros_like(x.values)
        full[..., start:stop] = g
        return (full,)

    return _result(x.values[..., start:stop].copy(), (x,), rule)


def tanh(a: Any) -> DiffArray:
    x = as_array(a)
    out = np.tanh(x.values)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (g * (1.0 - out * out),)

    return _result(out, (x,), rule)


def silu(a: Any) -> DiffArray:
    x = as_array(a)
    sig = expit(x.values)

    def rule(g: FloatArray) -> tuple[FloatArray]:
        return (g * sig * (1.0 + x.values * (1.0 - sig)),)

    return _result(x.values * sig, (x,), rule)


def layer_norm(a: Any, eps: float = LAYER_NORM_EPS) -> DiffArray:
    """Normalize each row over the last axis, without affine parameters."""
    x = as_array(a)
    if x.values.ndim == 0 or x.shape[-1] < 1:
        raise DimensionError("layer_norm needs a non-empty last axis", x.shape, None)
    centered = x.values - x.values.mean(axis=-1, keepdims=True)
    inv_std = 1.0 / np.sqrt((centered * centered).mean(axis=-1, keepdims=True) + eps)
    normed = centered * inv_std

    def rule(g: FloatArray) -> tuple[FloatArray]:
        g_mean = g.mean(axis=-1, keepdims=True)
        proj = (g * normed).mean(axis=-1, keepdims=True)
        return (inv_std * (g - g_mean - normed * proj),)

    return _result(normed, (x,), rule)
