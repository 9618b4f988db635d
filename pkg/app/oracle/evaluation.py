"""Exact values of finite-state strategies via their restricted graphs."""
import networkx as nx

from core.arena import Player
from core.weights import INF, add
from errors import ParameterError, PlayerMismatchError
from strategies.machine import restrict

OBJECTIVES = ("limit", "reach")


def _check(strategy, player, objective):
    if strategy.player != player:
        raise PlayerMismatchError(f"expected a strategy for player {int(player)}, got player {int(strategy.player)}")
    if objective not in OBJECTIVES:
        raise ParameterError(f"unknown objective {objective!r}")


def _goal_free(graph, nodes):
    return graph.subgraph(n for n in nodes if not graph.nodes[n]['goal'])


def _longest_gaps(graph, free):
    """g(c) = max over successors of weight + (0 at goal nodes, else g(successor))"""
    gap = {}
    for node in reversed(list(nx.topological_sort(free))):
        gap[node] = _gap_step(graph, node, gap)
    return gap


def _gap_step(graph, node, gap):
    best = 0
    for _, succ, weight in graph.out_edges(node, data='weight'):
        rest = 0 if graph.nodes[succ]['goal'] else gap[succ]
        best = max(best, add(weight, rest))
    return best


def evaluate_strategy_value_p0(product, strategy, v, objective="limit"):
    """sup over plays from ``v`` consistent with a Player 0 strategy"""
    _check(strategy, Player.ZERO, objective)
    graph = restrict(product, strategy, sources=[v])
    start = graph.graph['sources'][v]

    if objective == "reach":
        if graph.nodes[start]['goal']:
            return 0
        free = _goal_free(graph, graph.nodes)
        reachable = nx.descendants(free, start) | {start}
        free = free.subgraph(reachable)
        if not nx.is_directed_acyclic_graph(free):
            return INF
        return _longest_gaps(graph, free)[start]

    reachable = nx.descendants(graph, start) | {start}
    free = _goal_free(graph, reachable)
    if not nx.is_directed_acyclic_graph(free):
        return INF
    gap = _longest_gaps(graph, free)
    for node in reachable:
        if node not in gap:
            gap[node] = _gap_step(graph, node, gap)
    return max(gap[node] for node in reachable)


def _segments(graph, source):
    """Cheapest weight from ``source`` to each goal node with no goal node in between"""
    def weight(u, _v, data):
        if u != source and graph.nodes[u]['goal']:
            return None
        return data['weight']

    distances = nx.single_source_dijkstra_path_length(graph, source, weight=weight)
    return {node: dist for node, dist in distances.items()
            if node != source and graph.nodes[node]['goal']} | _self_return(graph, source, weight)


def _self_return(graph, source, weight):
    """Cheapest way back to a goal ``source`` through non-goal nodes"""
    if not graph.nodes[source]['goal']:
        return {}
    best = INF
    for _, succ, w in graph.out_edges(source, data='weight'):
        if succ == source:
            best = min(best, w)
            continue
        if graph.nodes[succ]['goal']:
            continue
        dist = nx.single_source_dijkstra_path_length(graph, succ, weight=weight).get(source)
        if dist is not None:
            best = min(best, add(w, dist))
    return {} if best == INF else {source: best}


def evaluate_strategy_value_p1(product, strategy, v, objective="limit"):
    """inf over plays from ``v`` consistent with a Player 1 strategy"""
    _check(strategy, Player.ONE, objective)
    graph = restrict(product, strategy, sources=[v])
    start = graph.graph['sources'][v]

    if objective == "reach":
        if graph.nodes[start]['goal']:
            return 0
        segments = _segments(graph, start)
        return min(segments.values(), default=INF)

    segment_graph = nx.DiGraph()
    segment_graph.add_node(start)
    keys = [start] + [n for n in graph.nodes if graph.nodes[n]['goal'] and n != start]
    for key in keys:
        for target, dist in _segments(graph, key).items():
            segment_graph.add_edge(key, target, weight=dist)

    for bound in sorted({w for _, _, w in segment_graph.edges(data='weight')}):
        allowed = nx.DiGraph([(a, b) for a, b, w in segment_graph.edges(data='weight') if w <= bound])
        if start not in allowed:
            continue
        reachable = nx.descendants(allowed, start) | {start}
        if not nx.is_directed_acyclic_graph(allowed.subgraph(reachable)):
            return bound
    return INF
