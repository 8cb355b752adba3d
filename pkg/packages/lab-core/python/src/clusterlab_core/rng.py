"""Named, versioned, counter-based random streams."""
from dataclasses import dataclass

import numpy as np

RNG_VERSION = "numpy-philox-v1"

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """
    A reproducible random stream identified by ``(seed, stream_id)``.

    Two streams with the same pair produce identical draws bit for bit; streams
    with different ids are statistically independent, so sample ``i`` of a run
    always uses stream ``i`` whichever worker executes it.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64 or not 0 <= self.stream_id <= _MASK64:
            raise ValueError("seed and stream_id must be 64-bit unsigned values")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))

    def child(self, stream_id: int) -> "RngStream":
        return RngStream(self.seed, stream_id)
