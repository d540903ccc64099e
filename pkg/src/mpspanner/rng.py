"""Named random substreams.

Every random draw in the package comes from a generator keyed by the
run seed plus integer tags, so a node (or a wrapper iteration) can
replay its own randomness without seeing anybody else's.
"""

from __future__ import annotations

import numpy as np

LEVEL = 1
FT_SAMPLE = 2
FT_INNER = 3


def substream(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def derive_seed(seed: int, *keys: int) -> int:
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1, np.uint64)[0])
