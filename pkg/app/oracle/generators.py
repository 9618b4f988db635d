"""Parameterized and random game instances."""
import logging

import numpy as np

from config import config
from core.arena import Arena, Edge, Player, Vertex, validate_arena
from core.automaton import Dfa, validate_dfa
from errors import ParameterError

SINK = "sink"


def _arena(names, owners, colors, edges):
    index = {name: i for i, name in enumerate(names)}
    vertices = tuple(Vertex(name, owner, color) for name, owner, color in zip(names, owners, colors))
    arena = Arena(vertices, tuple(Edge(index[a], index[b], w) for a, b, w in edges))
    validate_arena(arena).raise_if_invalid()
    return arena


def _dfa(states, alphabet, initial, accepting, transitions):
    dfa = Dfa(tuple(states), tuple(alphabet), initial, frozenset(accepting), dict(transitions)).completed(SINK)
    validate_dfa(dfa).raise_if_invalid()
    return dfa


def generate_family_15_1(n, s):
    """Memory lower-bound family: from v_j the only optimal play is v_j v^(s-1) v' (v_j')^omega.

    Its value is n + 1 + j, and any strategy realizing all of them uniformly
    needs at least n(s - 1) memory states.
    """
    if n < 1 or s < 2:
        raise ParameterError(f"family 15.1 needs n >= 1 and s >= 2, got n={n}, s={s}")

    names = [f"v{j}" for j in range(1, n + 1)] + ["v", "v'"] + [f"v{j}'" for j in range(1, n + 1)]
    colors = ["a"] * n + ["a", "b"] + ["c"] * n
    edges = [(f"v{j}", "v", 2 * j) for j in range(1, n + 1)]
    edges += [("v", "v", 0), ("v", "v'", 0)]
    edges += [("v'", f"v{j}'", n + 1 - j) for j in range(1, n + 1)]
    edges += [(f"v{j}'", f"v{j}'", n + 1 + j) for j in range(1, n + 1)]
    arena = _arena(names, [Player.ZERO] * len(names), colors, edges)

    states = ["q0"] + [f"q{i}" for i in range(1, s + 1)] + ["q"]
    transitions = {("q0", "a"): "q1", (f"q{s}", "b"): "q1", ("q1", "c"): "q", ("q", "c"): "q"}
    for i in range(1, s):
        transitions[(f"q{i}", "a")] = f"q{i + 1}"
    dfa = _dfa(states, "abc", "q0", {"q"}, transitions)
    logging.debug(f"Generated family 15.1 with n={n}, s={s}")
    return arena, dfa


def generate_family_15_2(m, n, W):
    """Value lower-bound family: the optimal value from v1 is m * n * W"""
    if m < 2 or n < 2 or W < 0:
        raise ParameterError(f"family 15.2 needs m >= 2, n >= 2 and W >= 0, got m={m}, n={n}, W={W}")

    names, colors, edges = [], [], []
    for i in range(1, m + 1):
        names += [f"v{i}", f"v{i}'"]
        colors += ["a", "b"]
        edges += [(f"v{i}", f"v{i}", W), (f"v{i}", f"v{i}'", W)]
        edges.append((f"v{i}'", f"v{i + 1}" if i < m else "v", W))
    names.append("v")
    colors.append("c")
    edges.append(("v", "v1", 0))
    arena = _arena(names, [Player.ZERO] * len(names), colors, edges)

    states = ["q0"] + [f"q{i}" for i in range(1, n + 1)]
    transitions = {(f"q{n}", "b"): "q1", ("q1", "c"): "q0", ("q0", "a"): "q2"}
    for i in range(1, n):
        transitions[(f"q{i}", "a")] = f"q{i + 1}"
    dfa = _dfa(states, "abc", "q1", {"q0"}, transitions)
    logging.debug(f"Generated family 15.2 with m={m}, n={n}, W={W}")
    return arena, dfa


def random_instance(vertices=None, dfa_states=None, weight_cap=None, seed=0,
                    colors=None, max_out_degree=None):
    """Seeded random arena and total DFA; every vertex gets at least one edge"""
    vertices = config.RANDOM_VERTICES if vertices is None else vertices
    dfa_states = config.RANDOM_DFA_STATES if dfa_states is None else dfa_states
    weight_cap = config.RANDOM_WEIGHT_CAP if weight_cap is None else weight_cap
    colors = tuple(config.RANDOM_COLORS if colors is None else colors)
    max_out_degree = config.RANDOM_MAX_OUT_DEGREE if max_out_degree is None else max_out_degree
    if vertices < 1 or dfa_states < 1 or weight_cap < 0 or max_out_degree < 1 or not colors:
        raise ParameterError("random instances need positive sizes and a nonempty color set")

    rng = np.random.default_rng(seed)
    names = [f"v{i}" for i in range(vertices)]
    owners = [Player(int(x)) for x in rng.integers(0, 2, size=vertices)]
    vertex_colors = [colors[int(x)] for x in rng.integers(0, len(colors), size=vertices)]
    edges = []
    for i in range(vertices):
        degree = int(rng.integers(1, min(max_out_degree, vertices) + 1))
        targets = sorted(int(t) for t in rng.choice(vertices, size=degree, replace=False))
        for t in targets:
            edges.append((names[i], names[t], int(rng.integers(0, weight_cap + 1))))
    arena = _arena(names, owners, vertex_colors, edges)

    states = [f"q{i}" for i in range(dfa_states)]
    accepting = {q for q in states[1:] if rng.random() < 0.5}
    transitions = {(q, c): states[int(rng.integers(0, dfa_states))] for q in states for c in colors}
    dfa = Dfa(tuple(states), colors, states[0], frozenset(accepting), transitions)
    validate_dfa(dfa).raise_if_invalid()
    return arena, dfa
