import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from pac4sac.boundlab.mdp import FiniteMDP, TabularPolicy


@dataclass(frozen=True, slots=True, eq=False)
class Counterexample:
    """A property-check instance that failed, with enough state to replay it."""

    check: str
    seed: int
    instance: int
    mdp: FiniteMDP
    policy: TabularPolicy
    q_hat: np.ndarray | None = None
    samples: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "seed": self.seed,
            "instance": self.instance,
            "mdp": self.mdp.to_json_dict(),
            "policy": self.policy.to_json_dict(),
            "q_hat": None if self.q_hat is None else self.q_hat.tolist(),
            "samples": self.samples,
            "details": self.details,
        }

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> "Counterexample":
        q_hat = data.get("q_hat")
        return cls(
            check=data["check"],
            seed=int(data["seed"]),
            instance=int(data["instance"]),
            mdp=FiniteMDP.from_json_dict(data["mdp"]),
            policy=TabularPolicy.from_json_dict(data["policy"]),
            q_hat=None if q_hat is None else np.asarray(q_hat, dtype=np.float64),
            samples=data.get("samples"),
            details=dict(data.get("details", {})),
        )


def _json_default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dump_counterexamples(path: Path, counterexamples: list[Counterexample]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = [c.to_json_dict() for c in counterexamples]
    path.write_text(json.dumps(payload, indent=2, default=_json_default))


def load_counterexamples(path: Path) -> list[Counterexample]:
    return [Counterexample.from_json_dict(item) for item in json.loads(path.read_text())]
