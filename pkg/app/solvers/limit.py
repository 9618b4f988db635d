"""Weighted limit games: greatest fixed point over rank hierarchies.

Each step sorts the goal vertices by their current rank into nested levels,
solves one reachability game per level, completes those rankings on the level
itself and combines them. The iteration starts from the all-zero ranking and
only ever raises ranks.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Tuple

import numpy as np

from config import config
from core.arena import Player
from core.memory import MemoryStructure
from core.weights import INF, INF_SENTINEL, MAX_FINITE, WEIGHT_DTYPE
from errors import BoundViolationError, InvariantError, IterationBoundError, ParameterError
from solvers.ranking import Ranking
from solvers.reachability import ReachSolution, optimal_successor, solve_reach
from strategies.machine import FiniteStateStrategy, compose_memory


@dataclass(frozen=True, eq=False)
class Hierarchy:
    """Levels F_1 <= ... <= F_k of the goal under one ranking"""
    ranks: Tuple[object, ...]
    levels: Tuple[FrozenSet[int], ...]
    inner: Tuple[ReachSolution, ...]
    completed: Tuple[Ranking, ...]

    @property
    def size(self):
        return len(self.ranks)

    def rank_array(self, h):
        rank = self.ranks[h - 1]
        return INF_SENTINEL if rank == INF else np.uint64(rank)


def build_hierarchy(r, product, goal, include_infinite=True, keep_trace=None):
    """Rank levels of ``goal`` under ``r`` with their inner and completed rankings"""
    goal = frozenset(goal)
    if not goal:
        raise ParameterError("hierarchy needs a nonempty goal")
    keep_trace = config.RETAIN_INNER_TRACES if keep_trace is None else keep_trace

    distinct = sorted({r[v] for v in goal})
    if not include_infinite:
        distinct = [rank for rank in distinct if rank != INF]

    levels, inner, completed = [], [], []
    for rank in distinct:
        level = frozenset(v for v in goal if r[v] <= rank)
        solution = solve_reach(product, level, keep_trace=keep_trace)
        levels.append(level)
        inner.append(solution)
        completed.append(solution.completed)
    return Hierarchy(tuple(distinct), tuple(levels), tuple(inner), tuple(completed))


def _apply_hierarchy(r, hierarchy):
    best = np.full(len(r), INF_SENTINEL, dtype=WEIGHT_DTYPE)
    for h in range(1, hierarchy.size + 1):
        candidate = np.maximum(r.values, hierarchy.completed[h - 1].values)
        candidate = np.maximum(candidate, hierarchy.rank_array(h))
        best = np.minimum(best, candidate)
    return Ranking(best)


def lift_limit(r, product, goal, include_infinite=True):
    """min over levels h of max(r(v), completed_h(v), rank_h)"""
    goal = frozenset(goal)
    if not goal:
        return Ranking.constant(len(r), INF)
    return _apply_hierarchy(r, build_hierarchy(r, product, goal, include_infinite))


class VertexKind(Enum):
    ZERO = "zero"
    ONE = "one"
    TWO = "two"


@dataclass(frozen=True)
class VertexType:
    kind: VertexKind
    level: Optional[int] = None


@dataclass(frozen=True, eq=False)
class LimitSolution:
    product: object
    goal: FrozenSet[int]
    trace: Tuple[Ranking, ...]
    hierarchies: Tuple[Hierarchy, ...]
    settling: np.ndarray
    iterations: int

    @property
    def fixpoint(self):
        return self.trace[-1]

    @property
    def stabilization_index(self):
        """Smallest j with r_j = r*"""
        return self.iterations - 1

    @property
    def fixpoint_hierarchy(self):
        if not self.hierarchies or not self.hierarchies[-1].size:
            return None
        return self.hierarchies[-1]

    def value(self, v):
        return self.fixpoint[v]


def rank_bound(product):
    """(|V| * |M| + 1) * W"""
    return (product.num_vertices + 1) * product.base.max_weight


def solve_limit(product, goal=None, include_infinite=True):
    """Iterate ``lift_limit`` from the all-zero ranking until it stabilizes"""
    goal = product.goal if goal is None else frozenset(goal)
    n = product.num_vertices
    current = Ranking.constant(n, 0)

    if not goal:
        empty = Ranking.constant(n, INF)
        logging.debug("Empty goal: every vertex is losing for Player 0")
        return LimitSolution(product, goal, (current, empty, empty), (), np.ones(n, dtype=np.int64), 2)

    bound = min(rank_bound(product), MAX_FINITE)
    trace = [current]
    hierarchies = []
    last_change = np.zeros(n, dtype=np.int64)
    iterations = 0
    while True:
        hierarchy = build_hierarchy(current, product, goal, include_infinite)
        lifted = _apply_hierarchy(current, hierarchy)
        iterations += 1
        hierarchies.append(hierarchy)
        trace.append(lifted)

        if np.any(lifted.values < current.values):
            raise InvariantError(f"limit ranking decreased in iteration {iterations}")
        finite = lifted.finite_mask()
        if np.any(lifted.values[finite] > np.uint64(bound)):
            raise BoundViolationError(f"finite rank above {bound} in iteration {iterations}")

        if lifted == current:
            break
        last_change[lifted.values != current.values] = iterations
        if iterations > len(goal) + 1:
            raise IterationBoundError(f"limit iteration did not stabilize within {len(goal) + 1} steps")
        current = lifted

    logging.debug(f"Limit fixed point after {iterations} iterations, |F| = {len(goal)}")
    return LimitSolution(
        product=product,
        goal=goal,
        trace=tuple(trace),
        hierarchies=tuple(hierarchies),
        settling=last_change,
        iterations=iterations,
    )


def choose_h(solution, v):
    """Smallest level h of the fixed point's hierarchy realizing r*(v)"""
    hierarchy = solution.fixpoint_hierarchy
    if hierarchy is None:
        return 1
    value = solution.fixpoint[v]
    for h in range(1, hierarchy.size + 1):
        if hierarchy.completed[h - 1][v] <= value and hierarchy.ranks[h - 1] <= value:
            return h
    raise InvariantError(f"no hierarchy level realizes the rank of vertex {v}")


def classify_vertex(solution, v):
    """Type of ``v`` relative to the hierarchy it settled under"""
    value = solution.fixpoint[v]
    if value == 0:
        return VertexType(VertexKind.ZERO)
    if not solution.hierarchies:
        return VertexType(VertexKind.TWO, 1)

    hierarchy = solution.hierarchies[int(solution.settling[v]) - 1]
    matching = [h for h in range(1, hierarchy.size + 1) if hierarchy.completed[h - 1][v] == value]
    if matching:
        return VertexType(VertexKind.ONE, max(matching))
    for h in range(1, hierarchy.size + 1):
        if hierarchy.ranks[h - 1] == value:
            return VertexType(VertexKind.TWO, h)
    raise InvariantError(f"vertex {v} matches neither a completed ranking nor a level rank")


def product_strategy_limit_p0(solution, strict=None):
    """Player 0 strategy on the product with memory {1, ..., k}"""
    product = solution.product
    arena = product.arena
    hierarchy = solution.fixpoint_hierarchy
    levels = range(1, hierarchy.size + 1) if hierarchy is not None else range(1, 2)
    start = {v: choose_h(solution, v) for v in range(arena.num_vertices)}

    def init(v):
        return start[v]

    def upd(h, v):
        if hierarchy is not None and v in hierarchy.levels[h - 1]:
            return start[v]
        return h

    moves = {}

    def nxt(v, h):
        if (v, h) not in moves:
            if hierarchy is None:
                moves[(v, h)] = arena.successors[v][0][0]
            else:
                moves[(v, h)] = optimal_successor(product, hierarchy.inner[h - 1], v, strict=strict)
        return moves[(v, h)]

    memory = MemoryStructure(states=tuple(levels), init=init, upd=upd)
    return FiniteStateStrategy(Player.ZERO, arena, memory, nxt)


def product_strategy_limit_p1(solution):
    """Player 1 strategy on the product whose memory is the last goal visit"""
    product = solution.product
    arena = product.arena
    goal = solution.goal
    types = {}
    moves = {}

    def upd(m, v):
        return v if v in goal else m

    def nxt(v, m):
        if (v, m) in moves:
            return moves[(v, m)]
        if m not in types:
            types[m] = classify_vertex(solution, m)
        kind = types[m]
        level = kind.level
        if kind.kind == VertexKind.ONE or (kind.kind == VertexKind.TWO and level > 1):
            if kind.kind == VertexKind.TWO:
                level -= 1
            hierarchy = solution.hierarchies[int(solution.settling[m]) - 1]
            move = optimal_successor(product, hierarchy.inner[level - 1], v, strict=False)
        else:
            move = arena.successors[v][0][0]
        moves[(v, m)] = move
        return move

    memory = MemoryStructure(states=tuple(range(arena.num_vertices)), init=lambda v: v, upd=upd)
    return FiniteStateStrategy(Player.ONE, arena, memory, nxt)


def extract_strategy_limit_p0(solution, strict=None):
    """Optimal Player 0 strategy on the base arena"""
    return compose_memory(solution.product, product_strategy_limit_p0(solution, strict))


def extract_strategy_limit_p1(solution):
    """Optimal Player 1 strategy on the base arena"""
    return compose_memory(solution.product, product_strategy_limit_p1(solution))


def value_map(solution):
    """v -> r*(v, init(v)) over the base arena"""
    product = solution.product
    return {v: solution.fixpoint[product.initial_vertex(v)] for v in range(product.base.num_vertices)}


def winning_region(solution):
    """Base vertices with finite value"""
    return {v for v, value in value_map(solution).items() if value != INF}
