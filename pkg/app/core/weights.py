"""Extended naturals: nonnegative integers plus infinity.

Scalars are plain ``int`` values or ``math.inf``. Arrays use ``uint64`` with the
largest representable value reserved as the infinity sentinel, so finite
weights live in ``[0, 2**64 - 2]``.
"""
import math

import numpy as np

from errors import WeightOverflowError

INF = math.inf
WEIGHT_DTYPE = np.uint64
INF_SENTINEL = np.iinfo(np.uint64).max
MAX_FINITE = int(INF_SENTINEL) - 1


def is_finite(value):
    return value != INF


def add(a, b):
    """Checked addition with absorbing infinity."""
    if a == INF or b == INF:
        return INF
    total = int(a) + int(b)
    if total > MAX_FINITE:
        raise WeightOverflowError(f"weight overflow: {a} + {b} exceeds {MAX_FINITE}")
    return total


def to_array(values):
    """Convert a sequence of extended weights into a uint64 array."""
    out = np.empty(len(values), dtype=WEIGHT_DTYPE)
    for i, value in enumerate(values):
        if value == INF:
            out[i] = INF_SENTINEL
        else:
            if value < 0 or value > MAX_FINITE:
                raise WeightOverflowError(f"weight {value} outside [0, {MAX_FINITE}]")
            out[i] = int(value)
    return out


def from_scalar(raw):
    """Convert one array element back to an extended weight."""
    raw = int(raw)
    return INF if raw == int(INF_SENTINEL) else raw


def checked_add(weights, ranks):
    """Elementwise ``weights + ranks`` on uint64 arrays, infinity absorbing."""
    finite = ranks != INF_SENTINEL
    headroom = INF_SENTINEL - np.uint64(1) - ranks
    if np.any(finite & (weights > headroom)):
        raise WeightOverflowError("weight overflow during ranking update")
    with np.errstate(over='ignore'):
        summed = weights + ranks
    return np.where(finite, summed, INF_SENTINEL).astype(WEIGHT_DTYPE)
