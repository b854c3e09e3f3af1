from dataclasses import dataclass

import numpy as np

from pac4sac.diffmath import DiffArray
from pac4sac.domain import ContractError, FloatArray


@dataclass(frozen=True, slots=True)
class AdamState:
    step: int
    first_moments: dict[str, FloatArray]
    second_moments: dict[str, FloatArray]


class Adam:
    """Adaptive-moment gradient descent over named parameters, updated in place."""

    def __init__(
        self,
        params: dict[str, DiffArray],
        learning_rate: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ) -> None:
        if learning_rate < 0.0:
            raise ContractError("learning rate must be non-negative")
        self._params = dict(params)
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self._step = 0
        self._m = {name: np.zeros_like(p.values) for name, p in self._params.items()}
        self._v = {name: np.zeros_like(p.values) for name, p in self._params.items()}

    @property
    def parameters(self) -> dict[str, DiffArray]:
        return self._params

    def zero_grad(self) -> None:
        for p in self._params.values():
            p.zero_grad()

    def step(self) -> None:
        self._step += 1
        bias1 = 1.0 - self.beta1**self._step
        bias2 = 1.0 - self.beta2**self._step
        for name, p in self._params.items():
            g = p.grad
            m = self._m[name]
            v = self._v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p.values -= self.learning_rate * (m / bias1) / (np.sqrt(v / bias2) + self.eps)

    def state(self) -> AdamState:
        return AdamState(
            step=self._step,
            first_moments={name: m.copy() for name, m in self._m.items()},
            second_moments={name: v.copy() for name, v in self._v.items()},
        )
