"""Weighted, vertex-coloured two-player arenas."""
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import List, Tuple

import numpy as np

from core.weights import MAX_FINITE, WEIGHT_DTYPE
from errors import ValidationError

VertexId = int
Color = str


class Player(IntEnum):
    ZERO = 0
    ONE = 1

    @property
    def opponent(self):
        return Player(1 - self)


@dataclass(frozen=True)
class Vertex:
    name: str
    owner: Player
    color: Color


@dataclass(frozen=True)
class Edge:
    source: VertexId
    target: VertexId
    weight: int


@dataclass
class ValidationReport:
    """Outcome of a validation pass; valid iff no violations were found"""
    subject: str
    violations: List[str] = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    def add(self, message):
        self.violations.append(message)

    def raise_if_invalid(self):
        if not self.valid:
            raise ValidationError(self)
        return self


@dataclass(frozen=True)
class Arena:
    """Finite directed graph with ownership, colouring and nonnegative weights.

    Vertices are addressed by their dense index; ``vertices[i].name`` is the
    external identifier used in files and reports.
    """
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    @cached_property
    def successors(self):
        """vE per vertex as tuples of (target, weight), in edge order"""
        out = [[] for _ in self.vertices]
        for edge in self.edges:
            out[edge.source].append((edge.target, edge.weight))
        return tuple(tuple(sorted(succ)) for succ in out)

    @cached_property
    def edge_weights(self):
        return {(e.source, e.target): e.weight for e in self.edges}

    @cached_property
    def name_index(self):
        return {vertex.name: i for i, vertex in enumerate(self.vertices)}

    @cached_property
    def colors(self):
        return frozenset(vertex.color for vertex in self.vertices)

    @cached_property
    def max_weight(self):
        return max((e.weight for e in self.edges), default=0)

    # numpy views used by the vectorized ranking operators
    @cached_property
    def edge_arrays(self):
        src = np.fromiter((e.source for e in self.edges), dtype=np.int64, count=len(self.edges))
        dst = np.fromiter((e.target for e in self.edges), dtype=np.int64, count=len(self.edges))
        weight = np.array([e.weight for e in self.edges], dtype=WEIGHT_DTYPE)
        return src, dst, weight

    @cached_property
    def owner_array(self):
        return np.array([int(v.owner) for v in self.vertices], dtype=np.int8)

    def owner(self, v):
        return self.vertices[v].owner

    def color(self, v):
        return self.vertices[v].color

    def name(self, v):
        return self.vertices[v].name

    def index(self, name):
        return self.name_index[name]

    def has_edge(self, u, v):
        return (u, v) in self.edge_weights

    def weight(self, u, v):
        return self.edge_weights[(u, v)]

    def owned_by(self, player):
        return [v for v, vertex in enumerate(self.vertices) if vertex.owner == player]


def validate_arena(arena):
    """Collect every structural violation of the arena"""
    report = ValidationReport("arena")
    if not arena.vertices:
        report.add("empty vertex set")
        return report

    n = arena.num_vertices
    names = [vertex.name for vertex in arena.vertices]
    for name in sorted({name for name in names if names.count(name) > 1}):
        report.add(f"duplicate vertex id {name}")
    for vertex in arena.vertices:
        if vertex.owner not in (Player.ZERO, Player.ONE):
            report.add(f"vertex {vertex.name} has no owner")

    seen = set()
    has_successor = [False] * n
    for edge in arena.edges:
        if not (0 <= edge.source < n and 0 <= edge.target < n):
            report.add(f"dangling edge endpoint {edge.source}->{edge.target}")
            continue
        label = f"{arena.name(edge.source)}->{arena.name(edge.target)}"
        if edge.weight < 0:
            report.add(f"negative weight {edge.weight} on edge {label}")
        elif edge.weight > MAX_FINITE:
            report.add(f"weight {edge.weight} on edge {label} exceeds 64 bits")
        if (edge.source, edge.target) in seen:
            report.add(f"duplicate edge {label}")
        seen.add((edge.source, edge.target))
        has_successor[edge.source] = True

    for v, ok in enumerate(has_successor):
        if not ok:
            report.add(f"sink vertex {arena.name(v)}")
    return report
