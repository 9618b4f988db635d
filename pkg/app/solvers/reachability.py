"""Weighted reachability games: least fixed point of the ranking operator.

Starting from the all-infinite ranking, each lift gives goal vertices rank 0,
lets Player 0 vertices take the cheapest successor and Player 1 vertices the
most expensive one, and never increases a rank. The fixed point is the value
of the reachability game on the product; settling times record when each rank
became final and drive the strict choice of optimal successors.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from config import config
from core.arena import Player
from core.weights import INF, INF_SENTINEL, WEIGHT_DTYPE, add, checked_add
from errors import IterationBoundError, NoOptimalSuccessorError
from solvers.ranking import Ranking
from strategies.machine import FiniteStateStrategy, compose_memory


def _goal_mask(product, goal):
    if isinstance(goal, np.ndarray) and goal.dtype == bool:
        return goal
    return product.mask(goal)


def _successor_extrema(arena, ranks):
    """Per-vertex min and max of weight + rank over outgoing edges"""
    src, dst, weight = arena.edge_arrays
    candidates = checked_add(weight, ranks[dst])
    lowest = np.full(arena.num_vertices, INF_SENTINEL, dtype=WEIGHT_DTYPE)
    highest = np.zeros(arena.num_vertices, dtype=WEIGHT_DTYPE)
    np.minimum.at(lowest, src, candidates)
    np.maximum.at(highest, src, candidates)
    return lowest, highest


def lift_reach(r, goal, product):
    """One application of the reachability ranking operator"""
    arena = product.arena
    mask = _goal_mask(product, goal)
    ranks = r.values
    lowest, highest = _successor_extrema(arena, ranks)
    best = np.where(arena.owner_array == Player.ZERO, lowest, highest)
    lifted = np.minimum(ranks, best)
    lifted[mask] = 0
    return Ranking(lifted)


def completion(r, goal, product):
    """Give each goal vertex the optimal weight of reaching the goal once more"""
    arena = product.arena
    mask = _goal_mask(product, goal)
    lowest, highest = _successor_extrema(arena, r.values)
    completed = r.values.copy()
    zero = mask & (arena.owner_array == Player.ZERO)
    one = mask & (arena.owner_array == Player.ONE)
    completed[zero] = lowest[zero]
    completed[one] = highest[one]
    return Ranking(completed)


@dataclass(frozen=True, eq=False)
class ReachSolution:
    product: object
    goal: frozenset
    trace: Tuple[Ranking, ...]
    fixpoint: Ranking
    settling: np.ndarray
    iterations: int

    @property
    def stabilization_index(self):
        """Smallest j with r_j = r*"""
        return self.iterations - 1

    @cached_property
    def goal_mask(self):
        return self.product.mask(self.goal)

    @cached_property
    def completed(self):
        return completion(self.fixpoint, self.goal_mask, self.product)

    def value(self, v):
        return self.fixpoint[v]


def solve_reach(product, goal, keep_trace=True):
    """Iterate ``lift_reach`` from the all-infinite ranking until it stabilizes.

    With ``keep_trace=False`` only the initial and final rankings are stored;
    settling times are tracked during the iteration either way.
    """
    n = product.num_vertices
    mask = _goal_mask(product, goal)
    goal = frozenset(np.flatnonzero(mask).tolist())

    current = Ranking.constant(n, INF)
    trace = [current]
    last_change = np.zeros(n, dtype=np.int64)
    iterations = 0
    while True:
        lifted = lift_reach(current, mask, product)
        iterations += 1
        if keep_trace:
            trace.append(lifted)
        if lifted == current:
            break
        last_change[lifted.values != current.values] = iterations
        if iterations >= n + 1:
            raise IterationBoundError(f"reachability iteration did not stabilize within {n + 1} steps")
        current = lifted

    if not keep_trace:
        trace.append(lifted)
    logging.debug(f"Reachability fixed point after {iterations} iterations on {n} vertices")
    return ReachSolution(
        product=product,
        goal=goal,
        trace=tuple(trace),
        fixpoint=lifted,
        settling=last_change,
        iterations=iterations,
    )


def settling_times(solution):
    """t_s(v): first iteration at which v holds its final rank"""
    return {v: int(t) for v, t in enumerate(solution.settling)}


def optimal_successor(product, solution, v, strict=None):
    """Smallest-index successor realizing the rank of ``v``.

    Goal vertices are matched against the completed ranking. In strict mode a
    Player 0 vertex outside the goal with finite rank additionally needs a
    successor that settled exactly one iteration earlier.
    """
    strict = config.STRICT_SUCCESSORS if strict is None else strict
    fixpoint = solution.fixpoint
    settling = solution.settling
    arena = product.arena
    in_goal = v in solution.goal
    target = solution.completed[v] if in_goal else fixpoint[v]
    check_settling = (strict and not in_goal and arena.owner(v) == Player.ZERO and target != INF)

    for succ, weight in arena.successors[v]:
        rank = fixpoint[succ]
        total = add(weight, rank)
        if total != target:
            continue
        if check_settling and settling[v] != settling[succ] + 1:
            continue
        return succ
    raise NoOptimalSuccessorError(f"no optimal successor at {arena.name(v)} for rank {target}")


def _positional_choice(product, solution, player, strict):
    arena = product.arena
    choice = {}
    for v in arena.owned_by(player):
        if v in solution.goal:
            choice[v] = arena.successors[v][0][0]
        else:
            choice[v] = optimal_successor(product, solution, v, strict=strict)
    return choice


def extract_strategy_reach_p0(solution, strict=None):
    """Optimal Player 0 strategy on the base arena, memory = product memory"""
    product = solution.product
    choice = _positional_choice(product, solution, Player.ZERO, strict)
    inner = FiniteStateStrategy.positional(Player.ZERO, product.arena, choice)
    return compose_memory(product, inner)


def extract_strategy_reach_p1(solution):
    """Optimal Player 1 strategy; rank-infinite vertices stay at rank infinity"""
    product = solution.product
    choice = _positional_choice(product, solution, Player.ONE, strict=False)
    inner = FiniteStateStrategy.positional(Player.ONE, product.arena, choice)
    return compose_memory(product, inner)


def product_strategy_reach(solution, player: Player, strict: Optional[bool] = None):
    """Positional strategy on the product itself"""
    product = solution.product
    choice = _positional_choice(product, solution, player, strict)
    return FiniteStateStrategy.positional(player, product.arena, choice)
