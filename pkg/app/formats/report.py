"""Solve reports, iteration traces and strategy export."""
import pandas as pd
import yaml

from core.arena import Player
from core.memory import MemoryStructure
from errors import InstanceFormatError
from strategies.machine import FiniteStateStrategy, reachable_configurations
from utils.helpers import format_weight, parse_weight


def memory_label(state):
    """Printable name of a (possibly nested) memory state"""
    if isinstance(state, tuple):
        return "(" + ",".join(memory_label(part) for part in state) + ")"
    return str(state)


def value_frame(values, arena):
    """One row per base vertex with its owner, color and value"""
    return pd.DataFrame({
        "vertex": [arena.name(v) for v in values],
        "owner": [int(arena.owner(v)) for v in values],
        "color": [arena.color(v) for v in values],
        "value": [format_weight(values[v]) for v in values],
    })


def trace_frame(solution):
    """Rankings r_0 ... r_n as rows over the product vertices"""
    product = solution.product
    columns = [product.label(i) for i in range(product.num_vertices)]
    rows = [[format_weight(x) for x in ranking] for ranking in solution.trace]
    return pd.DataFrame(rows, columns=columns, index=[f"r{j}" for j in range(len(rows))])


def strategy_to_dict(strategy, sources=None):
    """Export tables restricted to the memory behaviour reachable from ``sources``"""
    arena = strategy.arena
    memory = strategy.memory
    configurations = sorted(reachable_configurations(strategy, sources),
                            key=lambda c: (c[0], memory_label(c[1])))
    vertices = range(arena.num_vertices) if sources is None else sources

    update = []
    seen = set()
    for v, m in configurations:
        for target, _ in arena.successors[v]:
            key = (memory_label(m), target)
            if key not in seen:
                seen.add(key)
                update.append({"state": key[0], "vertex": arena.name(target),
                               "to": memory_label(memory.upd(m, target))})

    return {
        "player": int(strategy.player),
        "size": strategy.size,
        "memory": sorted({memory_label(m) for _, m in configurations} | {row["to"] for row in update}),
        "init": {arena.name(v): memory_label(memory.init(v)) for v in vertices},
        "update": update,
        "next": [{"vertex": arena.name(v), "state": memory_label(m),
                  "to": arena.name(strategy.next_move(v, m))}
                 for v, m in configurations if arena.owner(v) == strategy.player],
    }


def strategy_from_dict(data, arena):
    """Rebuild a strategy from its exported tables"""
    try:
        player = Player(int(data["player"]))
        states = [str(m) for m in data["memory"]]
        init = {arena.index(name): str(m) for name, m in data["init"].items()}
        upd = {(str(row["state"]), arena.index(row["vertex"])): str(row["to"]) for row in data["update"]}
        table = {(arena.index(row["vertex"]), str(row["state"])): arena.index(row["to"]) for row in data["next"]}
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceFormatError(f"malformed strategy: {e}") from e
    memory = MemoryStructure.from_tables(states, init, upd)
    return FiniteStateStrategy.from_table(player, arena, memory, table)


def load_strategy(path, arena, player=0):
    """Read a strategy file, or one strategy out of a solve report"""
    with open(path, 'r') as file:
        data = yaml.safe_load(file)
    if isinstance(data, dict) and "strategies" in data:
        key = f"player{player}"
        if key not in data["strategies"]:
            raise InstanceFormatError(f"report has no strategy for {key}")
        data = data["strategies"][key]
    if not isinstance(data, dict):
        raise InstanceFormatError("strategy file must hold a mapping")
    return strategy_from_dict(data, arena)


def solve_report(solution, mode, values, strategies, include_trace=False):
    """Plain-data report of one solve"""
    product = solution.product
    arena = product.base
    report = {
        "mode": mode,
        "values": {arena.name(v): format_weight(value) for v, value in values.items()},
        "product_vertices": [product.label(i) for i in range(product.num_vertices)],
        "stabilization": int(solution.stabilization_index),
        "settling": {product.label(i): int(t) for i, t in enumerate(solution.settling)},
        "strategies": {f"player{int(s.player)}": strategy_to_dict(s) for s in strategies},
    }
    if include_trace:
        report["trace"] = [[format_weight(x) for x in ranking] for ranking in solution.trace]
    return report


def render_report(report):
    return yaml.safe_dump(report, sort_keys=False, default_flow_style=None)


def parse_trace(text):
    """Rankings of a rendered report, with infinity restored"""
    report = yaml.safe_load(text)
    return [[parse_weight(x) for x in row] for row in report["trace"]]
