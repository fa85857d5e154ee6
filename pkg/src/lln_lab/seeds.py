"""Deterministic, index-addressable random streams.

Every sampler in the package draws from a :class:`SeedStream`: a counter-mode
Philox stream keyed by (master_seed, replica_id, stream_tag).  The random word
consumed for sample index k depends only on the key and on k, never on the
block boundaries used to read it, so paths can be regenerated chunk by chunk
with bit-identical results and replicas can run in parallel without shared
state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

STREAM_TAGS = ("x", "y")
_TAG_CODES = {"x": 0, "y": 1}

# substream roles inside one (replica, tag) stream
_PER_INDEX = 0
_PER_PATH = 1

# Philox emits 4 words per counter increment
_WORDS_PER_BLOCK = 4


@dataclass(frozen=True)
class SeedStream:
    """One reproducible random stream, addressed by 1-based sample index.

    Distinct (replica_id, stream_tag) pairs are keyed through independent
    ``SeedSequence`` spawn keys, which is numpy's supported mechanism for
    generating statistically independent streams from one master seed.
    """

    master_seed: int
    replica_id: int
    stream_tag: str

    def __post_init__(self):
        if self.stream_tag not in STREAM_TAGS:
            raise ValidationError(
                f"stream_tag must be one of {STREAM_TAGS}, got {self.stream_tag!r}"
            )
        if self.replica_id < 0:
            raise ValidationError("replica_id must be nonnegative")

    def _key(self, substream: int) -> np.ndarray:
        seq = np.random.SeedSequence(
            self.master_seed,
            spawn_key=(self.replica_id, _TAG_CODES[self.stream_tag], substream),
        )
        return seq.generate_state(2, np.uint64)

    def raw(self, first: int, last: int) -> np.ndarray:
        """Raw 64-bit words for sample indices ``first..last`` (inclusive)."""
        if first < 1:
            raise ValidationError("sample indices are 1-based")
        count = last - first + 1
        if count <= 0:
            return np.empty(0, dtype=np.uint64)
        start = first - 1
        block, offset = divmod(start, _WORDS_PER_BLOCK)
        gen = np.random.Philox(counter=[block, 0, 0, 0], key=self._key(_PER_INDEX))
        n_words = -(-(offset + count) // _WORDS_PER_BLOCK) * _WORDS_PER_BLOCK
        return gen.random_raw(n_words)[offset : offset + count]

    def uniforms(self, first: int, last: int) -> np.ndarray:
        """Uniforms on the open interval (0, 1) for indices ``first..last``.

        The midpoint mapping (w >> 11 + 0.5) * 2**-53 never produces 0.0 or
        1.0, so inverse-CDF transforms of heavy tails stay finite.
        """
        words = self.raw(first, last)
        return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53

    def path_rng(self) -> np.random.Generator:
        """Generator for the few path-level draws of structured variants.

        Independent of the per-index stream; calling it twice yields two
        generators in the same initial state (determinism contract).
        """
        return np.random.Generator(np.random.Philox(key=self._key(_PER_PATH)))
