"""Finite-state strategies: execution, composition and restricted graphs."""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable

import networkx as nx

from core.arena import Arena, Player
from core.memory import MemoryStructure
from errors import ArenaMismatchError, GameError, NotAPathError, NotOwnedError


@dataclass(frozen=True, eq=False)
class FiniteStateStrategy:
    """Strategy for ``player`` on ``arena`` implemented by ``memory`` and ``nxt``"""
    player: Player
    arena: Arena
    memory: MemoryStructure
    nxt: Callable[[int, Hashable], int]

    @classmethod
    def from_table(cls, player, arena, memory, table):
        table = dict(table)

        def lookup(v, m):
            try:
                return table[(v, m)]
            except KeyError:
                raise GameError(f"no next move stored for ({arena.name(v)}, {m})") from None

        return cls(player, arena, memory, lookup)

    @classmethod
    def positional(cls, player, arena, choice):
        """Memoryless strategy from a vertex -> successor mapping"""
        return cls.from_table(player, arena, MemoryStructure.trivial(),
                              {(v, 0): target for v, target in choice.items()})

    @property
    def size(self):
        return self.memory.size

    def next_move(self, v, m):
        if self.arena.owner(v) != self.player:
            raise NotOwnedError(f"vertex {self.arena.name(v)} is not owned by player {int(self.player)}")
        target = self.nxt(v, m)
        if not self.arena.has_edge(v, target):
            raise NotAPathError(
                f"next move {self.arena.name(v)}->{self.arena.name(target)} is not an edge"
            )
        return target


def compose_memory(product, inner):
    """Turn a strategy on ``product`` into one on ``product.base`` with memory M x M'"""
    if inner.arena is not product.arena and inner.arena != product.arena:
        raise ArenaMismatchError("inner strategy is not defined on this product arena")

    outer = product.memory
    inner_memory = inner.memory

    def init(v):
        m = outer.init(v)
        return (m, inner_memory.init(product.index(v, m)))

    def upd(state, v):
        m, m_inner = state
        m_next = outer.upd(m, v)
        return (m_next, inner_memory.upd(m_inner, product.index(v, m_next)))

    def nxt(v, state):
        m, m_inner = state
        return product.base_vertex(inner.nxt(product.index(v, m), m_inner))

    states = tuple((m, m_inner) for m in outer.states for m_inner in inner_memory.states)
    memory = MemoryStructure(states=states, init=init, upd=upd)
    return FiniteStateStrategy(inner.player, product.base, memory, nxt)


def strategy_size(strategy):
    """Declared number of memory states"""
    return strategy.size


def reachable_configurations(strategy, sources=None):
    """(vertex, memory) pairs met by plays consistent with ``strategy``"""
    arena = strategy.arena
    memory = strategy.memory
    sources = range(arena.num_vertices) if sources is None else sources

    seen = set()
    queue = deque()
    for v in sources:
        start = (v, memory.init(v))
        if start not in seen:
            seen.add(start)
            queue.append(start)

    while queue:
        v, m = queue.popleft()
        if arena.owner(v) == strategy.player:
            targets = (strategy.next_move(v, m),)
        else:
            targets = tuple(t for t, _ in arena.successors[v])
        for t in targets:
            nxt_config = (t, memory.upd(m, t))
            if nxt_config not in seen:
                seen.add(nxt_config)
                queue.append(nxt_config)
    return seen


def reachable_memory(strategy, sources=None):
    """Memory states actually used from ``sources`` (all vertices by default)"""
    return {m for _, m in reachable_configurations(strategy, sources)}


def restrict(product, strategy, sources=None):
    """One-player graph of ``product`` under ``strategy``.

    Nodes are ``(product vertex, strategy memory)`` configurations reachable
    from ``sources``; the strategy's player keeps only the chosen edge. The
    strategy may live on ``product.base`` or on ``product.arena``; ``sources``
    are vertices of the strategy's arena. ``graph.graph['sources']`` maps each
    source to its start configuration.
    """
    on_base = strategy.arena is product.base or strategy.arena == product.base
    if not on_base and not (strategy.arena is product.arena or strategy.arena == product.arena):
        raise ArenaMismatchError("strategy is defined on neither the base nor the product arena")

    memory = strategy.memory
    owner_arena = product.arena
    sources = range(strategy.arena.num_vertices) if sources is None else list(sources)

    graph = nx.DiGraph()
    starts = {}
    queue = deque()

    def add_node(node):
        if node not in graph:
            pv = node[0]
            graph.add_node(node, owner=int(owner_arena.owner(pv)), goal=pv in product.goal)
            queue.append(node)

    for source in sources:
        if on_base:
            start = (product.initial_vertex(source), memory.init(source))
        else:
            start = (source, memory.init(source))
        starts[source] = start
        add_node(start)

    while queue:
        pv, m = queue.popleft()
        v, outer = product.pair(pv)
        if owner_arena.owner(pv) == strategy.player:
            if on_base:
                choice = strategy.next_move(v, m)
                chosen = product.index(choice, product.memory.upd(outer, choice))
            else:
                chosen = strategy.next_move(pv, m)
            moves = [(chosen, owner_arena.weight(pv, chosen))]
        else:
            moves = owner_arena.successors[pv]

        for target, weight in moves:
            step = product.base_vertex(target) if on_base else target
            node = (target, memory.upd(m, step))
            add_node(node)
            graph.add_edge((pv, m), node, weight=weight)

    graph.graph['sources'] = starts
    logging.debug(f"Restricted graph has {graph.number_of_nodes()} configurations")
    return graph


def consistent(prefix, strategy):
    """Whether a finite path follows ``strategy`` at every owned position"""
    arena = strategy.arena
    prefix = list(prefix)
    for u, v in zip(prefix, prefix[1:]):
        if not arena.has_edge(u, v):
            raise NotAPathError(f"{arena.name(u)}->{arena.name(v)} is not an edge")
    if len(prefix) < 2:
        return True

    m = strategy.memory.init(prefix[0])
    for u, v in zip(prefix, prefix[1:]):
        if arena.owner(u) == strategy.player and strategy.next_move(u, m) != v:
            return False
        m = strategy.memory.upd(m, v)
    return True
