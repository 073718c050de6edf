"""
Keyed random number streams.
A stream is addressed by (seed, *keys), so any replicate, draw or replication
can be regenerated independently of what ran before it or on which thread.
"""

import numpy as np

from ..stat_types import Seed

# Stream purposes, used as the first key after the seed
STREAM_DATA = 0
STREAM_BOOTSTRAP = 1
STREAM_SUBSAMPLE = 2
STREAM_ORACLE = 3

_SEED_LIMIT = 2**64


def validate_seed(seed: Seed) -> Seed:
    """Check that a seed is a 64-bit unsigned integer"""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValueError(f"Seed must be an integer, got {seed!r}")
    if not (0 <= int(seed) < _SEED_LIMIT):
        raise ValueError(f"Seed must be in [0, 2^64), got {seed}")
    return int(seed)


def keyed_stream(seed: Seed, *keys: int) -> np.random.Generator:
    """
    Independent generator for the stream (seed, *keys).

    Philox is counter-based, and SeedSequence hashes the full key path, so
    distinct key paths give statistically independent streams.

    Args:
        seed: 64-bit unsigned base seed
        keys: Non-negative integers identifying the stream

    Returns:
        numpy Generator positioned at the start of the stream
    """
    entropy = [validate_seed(seed), *(int(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def derive_seed(seed: Seed, *keys: int) -> Seed:
    """64-bit seed for a child computation that takes a seed rather than a stream"""
    entropy = [validate_seed(seed), *(int(k) for k in keys)]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def fresh_seed() -> Seed:
    """New 64-bit seed from OS entropy (reported so the run can be repeated)"""
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
