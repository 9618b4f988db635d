"""Product arena A x M and its goal set."""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Tuple

import numpy as np

from core.arena import Arena, Edge, Vertex
from core.memory import MemoryStructure, memory_from_dfa
from utils.helpers import vertex_label


@dataclass(frozen=True, eq=False)
class ProductArena:
    """Full product of an arena and a memory structure.

    Product vertex ``(v, m)`` has index ``v * |M| + memory_index[m]``. The
    product itself is kept as an :class:`Arena` so the solvers work on it
    like on any other arena.
    """
    base: Arena
    memory: MemoryStructure
    arena: Arena
    goal: FrozenSet[int]
    pairs: Tuple[Tuple[int, object], ...]

    @property
    def num_vertices(self):
        return self.arena.num_vertices

    @cached_property
    def memory_index(self):
        return {m: i for i, m in enumerate(self.memory.states)}

    @cached_property
    def goal_mask(self):
        mask = np.zeros(self.num_vertices, dtype=bool)
        mask[list(self.goal)] = True
        return mask

    def index(self, v, m):
        return v * self.memory.size + self.memory_index[m]

    def pair(self, index):
        return self.pairs[index]

    def base_vertex(self, index):
        return self.pairs[index][0]

    def initial_vertex(self, v):
        """(v, init(v))"""
        return self.index(v, self.memory.init(v))

    def label(self, index):
        return self.arena.name(index)

    def mask(self, vertices):
        """Boolean mask of an iterable of product indices"""
        mask = np.zeros(self.num_vertices, dtype=bool)
        mask[list(vertices)] = True
        return mask


def build_product(arena, memory, accepting):
    """Expand ``arena`` by ``memory``; the goal is every (v, m) with m accepting"""
    size = memory.size
    states = memory.states
    accepting = frozenset(accepting)

    vertices = []
    pairs = []
    goal = set()
    for v, vertex in enumerate(arena.vertices):
        for m in states:
            index = len(pairs)
            name = vertex.name if size == 1 else vertex_label(vertex.name, m)
            vertices.append(Vertex(name, vertex.owner, vertex.color))
            pairs.append((v, m))
            if m in accepting:
                goal.add(index)

    memory_index = {m: i for i, m in enumerate(states)}
    edges = []
    for edge in arena.edges:
        for i, m in enumerate(states):
            target_state = memory.upd(m, edge.target)
            edges.append(Edge(
                edge.source * size + i,
                edge.target * size + memory_index[target_state],
                edge.weight,
            ))

    logging.debug(f"Built product with {len(vertices)} vertices and {len(edges)} edges")
    return ProductArena(
        base=arena,
        memory=memory,
        arena=Arena(tuple(vertices), tuple(edges)),
        goal=frozenset(goal),
        pairs=tuple(pairs),
    )


def direct_product(arena, goal):
    """Product with one memory state and an explicit goal of base vertices"""
    product = build_product(arena, MemoryStructure.trivial(), accepting=())
    return ProductArena(
        base=product.base,
        memory=product.memory,
        arena=product.arena,
        goal=frozenset(goal),
        pairs=product.pairs,
    )


def product_from_dfa(arena, dfa):
    """A x M_A with goal F = V x F_Q"""
    return build_product(arena, memory_from_dfa(dfa, arena), dfa.accepting)
