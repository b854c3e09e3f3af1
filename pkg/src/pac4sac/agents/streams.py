from dataclasses import dataclass, fields

import numpy as np

STREAM_NAMES = ("env", "actor_noise", "critic_noise", "buffer", "init", "warmup")


@dataclass(frozen=True, slots=True)
class SeedStreams:
    """Independent generators, one per source of randomness in a training run."""

    env: np.random.Generator
    actor_noise: np.random.Generator
    critic_noise: np.random.Generator
    buffer: np.random.Generator
    init: np.random.Generator
    warmup: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> "SeedStreams":
        children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
        return cls(*(np.random.default_rng(child) for child in children))

    def named(self) -> dict[str, np.random.Generator]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
