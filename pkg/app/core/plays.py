"""Ultimately periodic plays and their exact values."""
from dataclasses import dataclass
from typing import Tuple

from core.weights import INF, add
from errors import NotAPathError


@dataclass(frozen=True)
class Lasso:
    """The play stem . loop^omega over vertex indices"""
    stem: Tuple[int, ...]
    loop: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'stem', tuple(self.stem))
        object.__setattr__(self, 'loop', tuple(self.loop))
        if not self.loop:
            raise NotAPathError("lasso loop must be nonempty")

    @property
    def start(self):
        return self.stem[0] if self.stem else self.loop[0]

    def positions(self, periods=1):
        return self.stem + self.loop * periods

    def steps(self):
        """Edges of the stem and of one loop traversal, wrap-around included"""
        sequence = self.positions(1) + self.loop[:1]
        return list(zip(sequence, sequence[1:]))

    def check(self, arena):
        for u, v in self.steps():
            if not arena.has_edge(u, v):
                raise NotAPathError(f"no edge {arena.name(u)}->{arena.name(v)} in lasso")
        return self

    def prefix(self, length):
        """First ``length`` positions of the play"""
        out = list(self.stem[:length])
        while len(out) < length:
            out.extend(self.loop[:length - len(out)])
        return tuple(out)


def extend_play(lasso, product):
    """ext(rho) in ``product`` for a lasso over ``product.base``.

    The memory value at each loop entry is tracked until it repeats; the
    traversals before the first repeated value join the stem.
    """
    memory = product.memory
    base_positions = list(lasso.stem)
    current = None
    extended = []

    def visit(v):
        nonlocal current
        current = memory.init(v) if current is None else memory.upd(current, v)
        extended.append(product.index(v, current))

    for v in base_positions:
        visit(v)

    seen = {}
    while True:
        # memory state as the loop is about to be entered again
        entry = memory.upd(current, lasso.loop[0]) if current is not None else memory.init(lasso.loop[0])
        if entry in seen:
            split = seen[entry]
            return Lasso(stem=tuple(extended[:split]), loop=tuple(extended[split:]))
        seen[entry] = len(extended)
        for v in lasso.loop:
            visit(v)


def eval_play_reach(lasso, arena, goal):
    """Weight of the shortest prefix ending in ``goal``; INF if none"""
    total = 0
    positions = lasso.positions(1)
    for i, v in enumerate(positions):
        if v in goal:
            return total
        if i + 1 < len(positions):
            total = add(total, arena.weight(v, positions[i + 1]))
    return INF


def eval_play_limit(lasso, arena, goal):
    """Largest weight from any position to the next goal position after it"""
    if not any(v in goal for v in lasso.loop):
        return INF

    positions = lasso.positions(2)
    relevant = len(lasso.stem) + len(lasso.loop)
    gap = [INF] * len(positions)
    for i in range(len(positions) - 2, -1, -1):
        nxt = positions[i + 1]
        rest = 0 if nxt in goal else gap[i + 1]
        gap[i] = add(arena.weight(positions[i], nxt), rest)
    return max(gap[:relevant])
