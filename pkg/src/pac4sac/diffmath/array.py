from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from types import TracebackType
from typing import Any
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing_extensions import Self

import numpy as np
from numpy.typing import ArrayLike

from pac4sac.domain import ContractError, FloatArray

BackwardFn = Callable[[FloatArray], Sequence[FloatArray | None]]


class DiffArray:
    """Dense float64 array that can take part in a recorded computation.

    An array is tracked while it holds a node on an open ``Tape``; every other
    array is a constant for differentiation purposes and never receives gradient.
    """

    __slots__ = ("values", "_grad", "node", "tape")

    def __init__(self, values: ArrayLike) -> None:
        self.values: FloatArray = np.array(values, dtype=np.float64)
        self._grad: FloatArray | None = None
        self.node: int | None = None
        self.tape: Tape | None = None

    @property
    def grad(self) -> FloatArray:
        if self._grad is None:
            self._grad = np.zeros_like(self.values)
        return self._grad

    @grad.setter
    def grad(self, value: FloatArray) -> None:
        self._grad = np.asarray(value, dtype=np.float64).reshape(self.values.shape)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.values.shape)

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def is_tracked(self) -> bool:
        return self.tape is not None and self.tape.active and self.node is not None

    def zero_grad(self) -> None:
        self._grad = None

    def item(self) -> float:
        if self.values.size != 1:
            raise ContractError(f"item() needs a single element, got shape {self.shape}")
        return float(self.values.reshape(()))

    def numpy(self) -> FloatArray:
        return self.values

    def detach(self) -> "DiffArray":
        return DiffArray(self.values.copy())

    def __repr__(self) -> str:
        state = f"node={self.node}" if self.is_tracked else "detached"
        return f"DiffArray(shape={self.shape}, {state})"

    def __add__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.add(self, other)

    def __radd__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.add(other, self)

    def __sub__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.sub(self, other)

    def __rsub__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.sub(other, self)

    def __mul__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.mul(self, other)

    def __rmul__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.mul(other, self)

    def __truediv__(self, other: Any) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.divide(self, other)

    def __neg__(self) -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.neg(self)

    def __matmul__(self, other: "DiffArray") -> "DiffArray":
        from pac4sac.diffmath import ops

        return ops.matmul(self, other)


@dataclass(slots=True)
class _Record:
    array: DiffArray
    parents: tuple[DiffArray, ...]
    backward: BackwardFn | None


class Tape:
    """Define-by-run record of primitive operations.

    Records are appended in execution order, so parents always precede their
    children. A tape is open from construction until ``close()``; closing it
    releases every array it watched.
    """

    def __init__(self) -> None:
        self._records: list[_Record] = []
        self._watched: list[DiffArray] = []
        self._active = True

    def __enter__(self) -> Self:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()

    def __len__(self) -> int:
        return len(self._records)

    @property
    def active(self) -> bool:
        return self._active

    def watch(self, *arrays: DiffArray) -> None:
        """Register leaf arrays (typically parameters) whose gradients are wanted."""
        self._require_active()
        for array in arrays:
            if array.tape is self and array.node is not None:
                continue
            if array.is_tracked:
                raise ContractError("array is already watched by another open tape")
            array.node = len(self._records)
            array.tape = self
            self._records.append(_Record(array, (), None))
            self._watched.append(array)

    def record(
        self,
        values: FloatArray,
        parents: tuple[DiffArray, ...],
        backward: BackwardFn,
    ) -> DiffArray:
        self._require_active()
        out = DiffArray(values)
        out.node = len(self._records)
        out.tape = self
        self._records.append(_Record(out, parents, backward))
        return out

    def backward(self, output: DiffArray) -> None:
        if output.values.size != 1:
            raise ContractError(f"backward needs a scalar output, got shape {output.shape}")
        if output.tape is not self or not output.is_tracked or output.node is None:
            raise ContractError("backward output is not recorded on this open tape")

        pending: dict[int, FloatArray] = {output.node: np.ones_like(output.values)}
        for node in range(output.node, -1, -1):
            upstream = pending.pop(node, None)
            if upstream is None:
                continue
            record = self._records[node]
            record.array.grad = record.array.grad + upstream
            if record.backward is None:
                continue
            for parent, parent_grad in zip(
                record.parents, record.backward(upstream), strict=True
            ):
                if parent_grad is None or parent.tape is not self or parent.node is None:
                    continue
                if parent.node in pending:
                    pending[parent.node] = pending[parent.node] + parent_grad
                else:
                    pending[parent.node] = parent_grad

    def close(self) -> None:
        self._active = False
        for array in self._watched:
            if array.tape is self:
                array.tape = None
                array.node = None
        self._watched.clear()

    def _require_active(self) -> None:
        if not self._active:
            raise ContractError("tape is closed")


def backward(output: DiffArray) -> None:
    if output.tape is None or not output.is_tracked:
        raise ContractError("backward output is not on an open tape")
    output.tape.backward(output)


def zero_grads(arrays: Sequence[DiffArray]) -> None:
    for array in arrays:
        array.zero_grad()
