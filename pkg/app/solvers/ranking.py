"""Rankings: total maps from product vertices to extended weights."""
import numpy as np

from core.weights import INF_SENTINEL, WEIGHT_DTYPE, from_scalar, to_array


class Ranking:
    """Immutable view of a uint64 rank array (INF_SENTINEL encodes infinity)"""

    __slots__ = ('_values',)

    def __init__(self, values):
        values = np.array(values, dtype=WEIGHT_DTYPE, copy=True)
        values.setflags(write=False)
        self._values = values

    @classmethod
    def constant(cls, size, value):
        return cls(to_array([value] * size))

    @classmethod
    def from_weights(cls, weights):
        return cls(to_array(list(weights)))

    @property
    def values(self):
        return self._values

    def __len__(self):
        return len(self._values)

    def __getitem__(self, v):
        return from_scalar(self._values[v])

    def __iter__(self):
        return (from_scalar(x) for x in self._values)

    def __eq__(self, other):
        if not isinstance(other, Ranking):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    __hash__ = None

    def to_list(self):
        return list(self)

    def finite_mask(self):
        return self._values != INF_SENTINEL

    def max_finite(self):
        finite = self._values[self.finite_mask()]
        return int(finite.max()) if finite.size else None

    def __repr__(self):
        return f"Ranking({self.to_list()})"
