"""Qualitative Büchi solving and the counter-product value oracle."""
import logging
from collections import deque

import networkx as nx

from core.arena import Player
from core.weights import INF, MAX_FINITE
from errors import InvariantError

OVERFLOW = "overflow"


def arena_graph(arena, goal=()):
    """networkx view of an arena with ``owner``/``goal`` node and ``weight`` edge attributes"""
    graph = nx.DiGraph()
    for v, vertex in enumerate(arena.vertices):
        graph.add_node(v, owner=int(vertex.owner), goal=v in goal)
    for edge in arena.edges:
        graph.add_edge(edge.source, edge.target, weight=edge.weight)
    return graph


def attractor(graph, target, player, nodes=None):
    """Vertices of the subgame ``nodes`` from which ``player`` forces a visit to ``target``"""
    nodes = set(graph.nodes) if nodes is None else set(nodes)
    attr = set(target) & nodes
    # successors still outside the attractor, per opponent vertex
    escapes = {v: sum(1 for s in graph.successors(v) if s in nodes) for v in nodes}
    queue = deque(attr)
    while queue:
        node = queue.popleft()
        for pred in graph.predecessors(node):
            if pred not in nodes or pred in attr:
                continue
            if graph.nodes[pred]['owner'] == player:
                attr.add(pred)
                queue.append(pred)
            else:
                escapes[pred] -= 1
                if escapes[pred] == 0:
                    attr.add(pred)
                    queue.append(pred)
    return attr


def buchi_winning_region(graph, goal):
    """Player 0 region for 'visit goal infinitely often' on a networkx game graph"""
    remaining = set(graph.nodes)
    while True:
        recur = attractor(graph, set(goal) & remaining, Player.ZERO, remaining)
        trap = remaining - recur
        if not trap:
            return remaining
        lost = attractor(graph, trap, Player.ONE, remaining)
        remaining -= lost


def buchi_attractor(product, goal=None):
    """W_0 of the Büchi game on the product; weights are ignored"""
    goal = product.goal if goal is None else frozenset(goal)
    return buchi_winning_region(arena_graph(product.arena, goal), goal)


def attractor_levels(product, goal=None):
    """Layers A_0 = goal, A_{j+1} = A_j plus its controlled predecessors"""
    goal = product.goal if goal is None else frozenset(goal)
    graph = arena_graph(product.arena, goal)
    levels = [set(goal)]
    while True:
        current = levels[-1]
        grown = set(current)
        for v in graph.nodes:
            if v in current:
                continue
            succ = list(graph.successors(v))
            if graph.nodes[v]['owner'] == Player.ZERO:
                if any(s in current for s in succ):
                    grown.add(v)
            elif all(s in current for s in succ):
                grown.add(v)
        if grown == current:
            return levels
        levels.append(grown)


def attractor_strategy(product, goal=None):
    """Positional Player 0 choice descending the attractor layers (weights ignored)"""
    levels = attractor_levels(product, goal)
    arena = product.arena
    layer = {}
    for j, level in enumerate(levels):
        for v in level:
            layer.setdefault(v, j)
    choice = {}
    for v in arena.owned_by(Player.ZERO):
        succ = [t for t, _ in arena.successors[v]]
        if v in layer and layer[v] > 0:
            choice[v] = next(t for t in succ if layer.get(t, len(levels)) < layer[v])
        else:
            choice[v] = succ[0]
    return choice


def counter_product(product, goal, bound):
    """Game graph over (vertex, weight since last goal visit) capped at ``bound``.

    Exceeding the bound leads to the absorbing, losing ``OVERFLOW`` node. Nodes
    entered at a goal vertex have counter 0 and are the Büchi targets.
    """
    arena = product.arena
    graph = nx.DiGraph()
    graph.add_node(OVERFLOW, owner=int(Player.ZERO), goal=False)
    graph.add_edge(OVERFLOW, OVERFLOW)
    targets = set()

    queue = deque()
    for v in range(arena.num_vertices):
        node = (v, 0)
        graph.add_node(node, owner=int(arena.owner(v)), goal=v in goal)
        queue.append(node)
        if v in goal:
            targets.add(node)

    while queue:
        node = queue.popleft()
        v, counter = node
        for target, weight in arena.successors[v]:
            total = counter + weight
            if total > bound:
                nxt = OVERFLOW
            else:
                nxt = (target, 0) if target in goal else (target, total)
                if nxt not in graph:
                    graph.add_node(nxt, owner=int(arena.owner(target)), goal=target in goal)
                    queue.append(nxt)
                    if target in goal:
                        targets.add(nxt)
            graph.add_edge(node, nxt)
    return graph, targets


def threshold_buchi(product, goal, bound):
    """Product vertices v such that Player 0 wins from (v, 0) with every goal gap <= bound"""
    goal = frozenset(goal)
    graph, targets = counter_product(product, goal, bound)
    region = buchi_winning_region(graph, targets)
    return {node[0] for node in region if node != OVERFLOW and node[1] == 0}


class ThresholdSearch:
    """Binary search for limit values over cached threshold regions"""

    def __init__(self, product, goal=None):
        self.product = product
        self.goal = product.goal if goal is None else frozenset(goal)
        self.upper = min((product.num_vertices + 1) * product.base.max_weight, MAX_FINITE)
        self._regions = {}

    def region(self, bound):
        if bound not in self._regions:
            self._regions[bound] = threshold_buchi(self.product, self.goal, bound)
            self._check_monotone(bound)
        return self._regions[bound]

    def _check_monotone(self, bound):
        region = self._regions[bound]
        for other, other_region in self._regions.items():
            if other < bound and not other_region <= region:
                raise InvariantError(f"threshold regions not monotone between {other} and {bound}")
            if other > bound and not region <= other_region:
                raise InvariantError(f"threshold regions not monotone between {bound} and {other}")

    def value(self, pv):
        if pv not in self.region(self.upper):
            return INF
        low, high = 0, self.upper
        while low < high:
            mid = (low + high) // 2
            if pv in self.region(mid):
                high = mid
            else:
                low = mid + 1
        return low


def oracle_limit_value(product, v, goal=None):
    """Limit value of base vertex ``v`` by binary search over threshold Büchi games"""
    search = ThresholdSearch(product, goal)
    return search.value(product.initial_vertex(v))


def oracle_limit_values(product, goal=None):
    """Oracle value of every base vertex, sharing the threshold regions"""
    search = ThresholdSearch(product, goal)
    values = {v: search.value(product.initial_vertex(v)) for v in range(product.base.num_vertices)}
    logging.debug(f"Threshold oracle evaluated {len(search._regions)} bounds")
    return values
