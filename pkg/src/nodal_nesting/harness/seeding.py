"""Counter-based replicate seeds."""

import numpy as np


def derive_seed(base_seed: int, radius_index: int, replicate: int) -> int:
    """64-bit seed for replicate ``replicate`` of the ``radius_index``-th radius.

    The triple is hashed by numpy's SeedSequence entropy mixing, so seeds do not
    depend on scheduling order and distinct triples give unrelated streams.
    """
    if min(base_seed, radius_index, replicate) < 0:
        raise ValueError("seed components must be nonnegative")
    sequence = np.random.SeedSequence([base_seed, radius_index, replicate])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
