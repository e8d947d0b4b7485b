"""Deterministic random streams shared by every sampler in the package.

Philox is a counter-based generator with a published algorithm, so a stream
is fully identified by its key.  Sub-stream ``chunk`` of master ``seed`` uses
key ``chunk * 2**64 + seed``; chunked work merged in chunk order is therefore
bit-identical no matter how many workers execute it.
"""

from __future__ import annotations

import operator

import numpy as np

from .errors import ValidationError

SEED_LIMIT = 2**64


def validate_seed(seed: int) -> int:
    if isinstance(seed, bool):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    try:
        value = operator.index(seed)
    except TypeError:
        raise ValidationError(f"seed must be an integer, got {seed!r}") from None
    if not 0 <= value < SEED_LIMIT:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def stream(seed: int, chunk: int = 0) -> np.random.Generator:
    """The Philox sub-stream ``chunk`` of master ``seed``."""
    return np.random.Generator(np.random.Philox(key=(chunk << 64) | validate_seed(seed)))
