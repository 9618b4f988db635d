import logging

import networkx as nx

from core.arena import Player
from utils.helpers import format_weight


class DotExporter:
    """Graphviz rendering of arenas, products and solutions"""

    SHAPES = {Player.ZERO: "circle", Player.ONE: "box"}

    def build_graph(self, arena, goal=(), ranks=None, strategy=None):
        """networkx graph with Graphviz attributes.

        ``ranks`` maps vertices to extended weights; ``strategy`` maps
        vertices to their chosen successor and highlights those edges.
        """
        strategy = strategy or {}
        graph = nx.DiGraph(name="arena")
        for v, vertex in enumerate(arena.vertices):
            label = f"{vertex.name} [{vertex.color}]"
            if ranks is not None:
                label += f" r={format_weight(ranks[v])}"
            attrs = {"label": label, "shape": self.SHAPES[vertex.owner]}
            if v in goal:
                attrs["peripheries"] = 2
            graph.add_node(f"n{v}", **attrs)

        for edge in arena.edges:
            attrs = {"label": str(edge.weight)}
            if strategy.get(edge.source) == edge.target:
                attrs.update(style="bold", color="red")
            graph.add_edge(f"n{edge.source}", f"n{edge.target}", **attrs)
        return graph

    def export(self, arena, goal=(), ranks=None, strategy=None):
        """DOT text for an arena with optional rank and strategy overlays"""
        graph = self.build_graph(arena, goal, ranks, strategy)
        dot = nx.drawing.nx_pydot.to_pydot(graph)
        logging.debug(f"Exported DOT with {graph.number_of_nodes()} nodes")
        return dot.to_string()

    def export_product(self, product, ranks=None, strategy=None):
        return self.export(product.arena, product.goal, ranks, strategy)

    def export_base(self, product, values=None, strategy=None):
        """Base arena; a vertex is marked when its initial product vertex is a goal"""
        goal = {v for v in range(product.base.num_vertices) if product.initial_vertex(v) in product.goal}
        first_moves = {}
        if strategy is not None:
            for v in product.base.owned_by(strategy.player):
                first_moves[v] = strategy.next_move(v, strategy.memory.init(v))
        return self.export(product.base, goal, values, first_moves)


dot_exporter = DotExporter()
