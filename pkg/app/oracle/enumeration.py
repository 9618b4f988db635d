"""Brute-force reachability values over all positional strategy pairs."""
import itertools
import logging
import math

from config import config
from core.arena import Player
from core.plays import Lasso, eval_play_reach
from core.weights import INF
from errors import InstanceTooLargeError


def induced_lasso(start, choice):
    """The unique play from ``start`` in a graph where every vertex has one move"""
    path = []
    index = {}
    v = start
    while v not in index:
        index[v] = len(path)
        path.append(v)
        v = choice[v]
    split = index[v]
    return Lasso(stem=tuple(path[:split]), loop=tuple(path[split:]))


def enumerate_positional_reach(product, goal=None, max_vertices=None, max_profiles=None):
    """min over Player 0 positional strategies of max over Player 1 ones, per vertex"""
    goal = product.goal if goal is None else frozenset(goal)
    max_vertices = config.ENUMERATION_MAX_PRODUCT_VERTICES if max_vertices is None else max_vertices
    max_profiles = config.ENUMERATION_MAX_PROFILES if max_profiles is None else max_profiles

    arena = product.arena
    n = arena.num_vertices
    if n > max_vertices:
        raise InstanceTooLargeError(f"{n} product vertices exceed the enumeration limit {max_vertices}")

    options = {v: [t for t, _ in arena.successors[v]] for v in range(n)}
    zero = arena.owned_by(Player.ZERO)
    one = arena.owned_by(Player.ONE)
    profiles = math.prod(len(options[v]) for v in range(n))
    if profiles > max_profiles:
        raise InstanceTooLargeError(f"{profiles} strategy profiles exceed the enumeration limit {max_profiles}")

    best = [INF] * n
    for picks_zero in itertools.product(*(options[v] for v in zero)):
        worst = [0] * n
        for picks_one in itertools.product(*(options[v] for v in one)):
            choice = dict(zip(zero, picks_zero))
            choice.update(zip(one, picks_one))
            for v in range(n):
                value = eval_play_reach(induced_lasso(v, choice), arena, goal)
                if value > worst[v]:
                    worst[v] = value
        best = [min(b, w) for b, w in zip(best, worst)]

    logging.debug(f"Enumerated {profiles} positional profiles on {n} vertices")
    return best
