"""Seeded, counter-based random generators.

Every random stream in the package is a Philox generator keyed by a tuple of
integers, so a trial's stream depends only on ``(seed, trial_index, ...)`` and
never on execution order.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed=None, *keys: int) -> np.random.Generator:
    """Return a Philox generator for ``seed`` and optional sub-stream keys.

    Passing an existing Generator returns it unchanged (keys must be empty).
    """
    if isinstance(seed, np.random.Generator):
        if keys:
            raise ValueError("cannot derive a keyed stream from a live Generator")
        return seed
    entropy = [0 if seed is None else int(seed), *(int(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministically derive a 32-bit integer seed from ``seed`` and keys."""
    ss = np.random.SeedSequence([int(seed), *(int(k) for k in keys)])
    return int(ss.generate_state(1, dtype=np.uint32)[0])
