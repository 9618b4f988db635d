"""Memory structures (M, init, upd) over an arena."""
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Tuple

from errors import ColorMismatchError, GameError, ParameterError


@dataclass(frozen=True)
class MemoryStructure:
    """Finite memory with ``init: V -> M`` and total ``upd: M x V -> M``.

    ``init`` and ``upd`` are plain callables so that composed structures stay
    lazy; ``from_tables`` builds one from explicit lookup tables.
    """
    states: Tuple[Hashable, ...]
    init: Callable[[int], Hashable]
    upd: Callable[[Hashable, int], Hashable]

    @property
    def size(self):
        return len(self.states)

    def upd_star(self, path):
        """Memory after reading a nonempty vertex sequence"""
        if not path:
            raise ParameterError("upd* is defined on nonempty prefixes only")
        memory = self.init(path[0])
        for v in path[1:]:
            memory = self.upd(memory, v)
        return memory

    @classmethod
    def trivial(cls):
        return cls(states=(0,), init=lambda v: 0, upd=lambda m, v: 0)

    @classmethod
    def from_tables(cls, states, init: Mapping, upd: Mapping):
        init, upd = dict(init), dict(upd)

        def lookup_init(v):
            try:
                return init[v]
            except KeyError:
                raise GameError(f"memory initialisation undefined at vertex {v}") from None

        def lookup_upd(m, v):
            try:
                return upd[(m, v)]
            except KeyError:
                raise GameError(f"memory update undefined for ({m}, {v})") from None

        return cls(states=tuple(states), init=lookup_init, upd=lookup_upd)


def memory_from_dfa(dfa, arena):
    """M_A: init(v) = δ(q_I, c(v)) and upd(q, v) = δ(q, c(v))"""
    unknown = sorted(arena.colors - set(dfa.alphabet))
    if unknown:
        raise ColorMismatchError(f"arena colors {unknown} are not in the automaton alphabet")

    colors = [vertex.color for vertex in arena.vertices]
    delta = dfa.delta
    initial = dfa.initial
    return MemoryStructure(
        states=tuple(dfa.states),
        init=lambda v: delta[(initial, colors[v])],
        upd=lambda q, v: delta[(q, colors[v])],
    )
