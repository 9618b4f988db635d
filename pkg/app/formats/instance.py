"""YAML instance files: one arena section and one automaton section."""
import logging
import re

import yaml

from core.arena import Arena, Edge, Player, Vertex, validate_arena
from core.automaton import Dfa, validate_dfa
from errors import InstanceFormatError

INTEGER = re.compile(r"^[+-]?[0-9]+$")

TOP_KEYS = {"arena", "dfa"}
ARENA_KEYS = {"vertices", "edges"}
VERTEX_KEYS = {"id", "owner", "color"}
EDGE_KEYS = {"from", "to", "weight"}
DFA_KEYS = {"states", "initial", "accepting", "transitions", "sink"}
TRANSITION_KEYS = {"from", "color", "to"}


def _fail(message, node):
    mark = node.start_mark if node is not None else None
    if mark is None:
        raise InstanceFormatError(message)
    raise InstanceFormatError(message, mark.line + 1, mark.column + 1)


def _mapping(node, what, allowed, required):
    if not isinstance(node, yaml.MappingNode):
        _fail(f"{what} must be a mapping", node)
    fields = {}
    for key_node, value_node in node.value:
        key = key_node.value
        if key not in allowed:
            _fail(f"unknown field {key!r} in {what}", key_node)
        if key in fields:
            _fail(f"duplicate field {key!r} in {what}", key_node)
        fields[key] = value_node
    for key in sorted(required - set(fields)):
        _fail(f"missing field {key!r} in {what}", node)
    return fields


def _sequence(node, what):
    if not isinstance(node, yaml.SequenceNode):
        _fail(f"{what} must be a list", node)
    return node.value


def _scalar(node, what):
    if not isinstance(node, yaml.ScalarNode) or node.tag == "tag:yaml.org,2002:null":
        _fail(f"{what} must be a plain value", node)
    return str(node.value)


def _integer(node, what):
    value = _scalar(node, what)
    if node.tag != "tag:yaml.org,2002:int" or not INTEGER.match(value):
        _fail(f"{what} must be a decimal integer, got {value!r}", node)
    return int(value)


def _parse_arena(node):
    fields = _mapping(node, "arena", ARENA_KEYS, ARENA_KEYS)

    vertices = []
    index = {}
    for item in _sequence(fields["vertices"], "arena.vertices"):
        vertex = _mapping(item, "vertex", VERTEX_KEYS, VERTEX_KEYS)
        name = _scalar(vertex["id"], "vertex id")
        if name in index:
            _fail(f"duplicate vertex id {name}", vertex["id"])
        owner = _integer(vertex["owner"], "vertex owner")
        if owner not in (0, 1):
            _fail(f"vertex owner must be 0 or 1, got {owner}", vertex["owner"])
        index[name] = len(vertices)
        vertices.append(Vertex(name, Player(owner), _scalar(vertex["color"], "vertex color")))

    edges = []
    for item in _sequence(fields["edges"], "arena.edges"):
        edge = _mapping(item, "edge", EDGE_KEYS, EDGE_KEYS)
        ends = []
        for key in ("from", "to"):
            name = _scalar(edge[key], f"edge {key}")
            if name not in index:
                _fail(f"edge endpoint {name} is not a vertex", edge[key])
            ends.append(index[name])
        edges.append(Edge(ends[0], ends[1], _integer(edge["weight"], "edge weight")))

    arena = Arena(tuple(vertices), tuple(edges))
    validate_arena(arena).raise_if_invalid()
    return arena


def _parse_dfa(node, arena):
    fields = _mapping(node, "dfa", DFA_KEYS, DFA_KEYS - {"sink"})
    states = []
    for item in _sequence(fields["states"], "dfa.states"):
        state = _scalar(item, "dfa state")
        if state in states:
            _fail(f"duplicate state id {state}", item)
        states.append(state)
    initial = _scalar(fields["initial"], "dfa initial state")
    accepting = [_scalar(item, "accepting state") for item in _sequence(fields["accepting"], "dfa.accepting")]

    delta = {}
    colors = []
    for item in _sequence(fields["transitions"], "dfa.transitions"):
        transition = _mapping(item, "transition", TRANSITION_KEYS, TRANSITION_KEYS)
        source = _scalar(transition["from"], "transition source")
        color = _scalar(transition["color"], "transition color")
        if (source, color) in delta:
            _fail(f"duplicate transition from {source} on {color}", item)
        delta[(source, color)] = _scalar(transition["to"], "transition target")
        if color not in colors:
            colors.append(color)

    alphabet = sorted(arena.colors)
    alphabet += [c for c in colors if c not in arena.colors]
    dfa = Dfa(tuple(states), tuple(alphabet), initial, frozenset(accepting), delta)
    if "sink" in fields:
        dfa = dfa.completed(_scalar(fields["sink"], "dfa sink"))
    validate_dfa(dfa, sorted(arena.colors)).raise_if_invalid()
    return dfa


def parse_instance_text(text):
    """Parse instance YAML into a validated (Arena, Dfa) pair"""
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        if mark is None:
            raise InstanceFormatError(f"syntax error: {e.problem}") from e
        raise InstanceFormatError(f"syntax error: {e.problem}", mark.line + 1, mark.column + 1) from e
    if root is None:
        raise InstanceFormatError("empty instance file")

    fields = _mapping(root, "instance", TOP_KEYS, TOP_KEYS)
    arena = _parse_arena(fields["arena"])
    dfa = _parse_dfa(fields["dfa"], arena)
    return arena, dfa


def parse_instance(path):
    """Read and validate an instance file"""
    with open(path, 'r') as file:
        text = file.read()
    arena, dfa = parse_instance_text(text)
    logging.info(f"Loaded {path}: {arena.num_vertices} vertices, {arena.num_edges} edges, {dfa.size} states")
    return arena, dfa


def instance_to_dict(arena, dfa):
    return {
        "arena": {
            "vertices": [{"id": v.name, "owner": int(v.owner), "color": v.color} for v in arena.vertices],
            "edges": [{"from": arena.name(e.source), "to": arena.name(e.target), "weight": e.weight}
                      for e in arena.edges],
        },
        "dfa": {
            "states": list(dfa.states),
            "initial": dfa.initial,
            "accepting": [q for q in dfa.states if q in dfa.accepting],
            "transitions": [{"from": q, "color": c, "to": dfa.delta[(q, c)]}
                            for q in dfa.states for c in dfa.alphabet if (q, c) in dfa.delta],
        },
    }


def serialize_instance(arena, dfa):
    """Canonical YAML text of an instance"""
    return yaml.safe_dump(instance_to_dict(arena, dfa), sort_keys=False, default_flow_style=None)


def write_instance(path, arena, dfa):
    with open(path, 'w') as file:
        file.write(serialize_instance(arena, dfa))
    logging.info(f"Wrote instance to {path}")
