import pydot
import pytest
import yaml

from core.arena import Player
from errors import InstanceFormatError, ValidationError
from formats.dot import dot_exporter
from formats.instance import parse_instance, parse_instance_text, serialize_instance, write_instance
from formats.report import (load_strategy, parse_trace, render_report, solve_report, strategy_from_dict,
                            strategy_to_dict, trace_frame, value_frame)
from oracle.evaluation import evaluate_strategy_value_p0
from solvers.limit import extract_strategy_limit_p0, extract_strategy_limit_p1, solve_limit, value_map

MINIMAL = """\
arena:
  vertices:
  - {id: a, owner: 0, color: goal}
  - {id: b, owner: 1, color: plain}
  edges:
  - {from: a, to: b, weight: 2}
  - {from: b, to: a, weight: 1}
dfa:
  states: [idle, seen]
  initial: idle
  accepting: [seen]
  transitions:
  - {from: idle, color: goal, to: seen}
  - {from: idle, color: plain, to: idle}
  - {from: seen, color: goal, to: seen}
  - {from: seen, color: plain, to: idle}
"""


def test_fixture_parses(detour):
    arena, dfa = detour
    assert arena.num_vertices == 7
    assert arena.num_edges == 14
    assert dfa.initial == "idle"
    assert dfa.accepting == frozenset({"seen"})


def test_canonical_files_round_trip(detour_path, escape_path):
    for path in (detour_path, escape_path):
        with open(path) as file:
            text = file.read()
        assert serialize_instance(*parse_instance(path)) == text


def test_write_instance(tmp_path, escape):
    path = tmp_path / "copy.yaml"
    write_instance(path, *escape)
    arena, dfa = parse_instance(path)
    assert arena == escape[0]
    assert dfa.delta == escape[1].delta


def test_minimal_instance():
    arena, dfa = parse_instance_text(MINIMAL)
    assert arena.owner(arena.index("b")) == Player.ONE
    assert arena.weight(arena.index("a"), arena.index("b")) == 2


def test_negative_weight_is_rejected():
    with pytest.raises(ValidationError, match="negative weight"):
        parse_instance_text(MINIMAL.replace("weight: 2", "weight: -2"))


def test_accepting_initial_state_is_rejected():
    with pytest.raises(ValidationError, match="empty word accepted"):
        parse_instance_text(MINIMAL.replace("accepting: [seen]", "accepting: [idle]"))


def test_unknown_field_reports_position():
    text = MINIMAL.replace("{id: b, owner: 1, color: plain}", "{id: b, owner: 1, color: plain, size: 3}")
    with pytest.raises(InstanceFormatError) as excinfo:
        parse_instance_text(text)
    assert excinfo.value.line == 4
    assert "unknown field 'size'" in str(excinfo.value)
    assert str(excinfo.value).startswith("4:")


def test_duplicate_state_reports_position():
    with pytest.raises(InstanceFormatError) as excinfo:
        parse_instance_text(MINIMAL.replace("states: [idle, seen]", "states: [idle, seen, seen]"))
    assert "duplicate state id seen" in str(excinfo.value)
    assert excinfo.value.line == 9
    assert excinfo.value.column == 24


def test_syntax_error_reports_position():
    with pytest.raises(InstanceFormatError) as excinfo:
        parse_instance_text("arena: [\n  vertices: {\n")
    assert excinfo.value.line is not None


@pytest.mark.parametrize("old, new, message", [
    ("weight: 2", "weight: 2.5", "decimal integer"),
    ("weight: 2", "weight: true", "decimal integer"),
    ("owner: 1", "owner: 3", "owner must be 0 or 1"),
    ("{id: b,", "{id: a,", "duplicate vertex id a"),
    ("to: b, weight", "to: c, weight", "is not a vertex"),
])
def test_malformed_fields(old, new, message):
    with pytest.raises(InstanceFormatError, match=message):
        parse_instance_text(MINIMAL.replace(old, new, 1))


def test_missing_section_and_empty_file():
    with pytest.raises(InstanceFormatError, match="missing field 'dfa'"):
        parse_instance_text(MINIMAL.split("dfa:")[0])
    with pytest.raises(InstanceFormatError, match="empty instance file"):
        parse_instance_text("")


def test_sink_completes_partial_automata():
    text = MINIMAL.replace("  - {from: seen, color: plain, to: idle}\n", "") + "  sink: trap\n"
    _, dfa = parse_instance_text(text)
    assert dfa.step("seen", "plain") == "trap"
    with pytest.raises(ValidationError, match="partial transition function"):
        parse_instance_text(MINIMAL.replace("  - {from: seen, color: plain, to: idle}\n", ""))


# reports

def test_trace_round_trips_through_the_report(escape_product):
    solution = solve_limit(escape_product)
    strategies = [extract_strategy_limit_p0(solution), extract_strategy_limit_p1(solution)]
    report = solve_report(solution, "limit", value_map(solution), strategies, include_trace=True)
    text = render_report(report)
    assert parse_trace(text) == [ranking.to_list() for ranking in solution.trace]

    data = yaml.safe_load(text)
    assert data["values"] == {"v0": "4", "v1": "7", "v2": "inf", "v3": "inf", "v4": "inf"}
    assert set(data["strategies"]) == {"player0", "player1"}
    assert data["stabilization"] == solution.stabilization_index == solution.iterations - 1
    assert len(data["trace"]) == data["stabilization"] + 2


def test_tables(escape, escape_product):
    arena, _ = escape
    solution = solve_limit(escape_product)
    frame = value_frame(value_map(solution), arena)
    assert list(frame["value"]) == ["4", "7", "inf", "inf", "inf"]
    trace = trace_frame(solution)
    assert list(trace.index) == [f"r{j}" for j in range(len(solution.trace))]
    assert trace.shape[1] == escape_product.num_vertices


def test_strategy_export_round_trip(escape, escape_product):
    arena, _ = escape
    solution = solve_limit(escape_product)
    sigma = extract_strategy_limit_p0(solution)
    loaded = strategy_from_dict(yaml.safe_load(yaml.safe_dump(strategy_to_dict(sigma))), arena)
    assert loaded.player == Player.ZERO
    values = value_map(solution)
    for v in range(arena.num_vertices):
        assert evaluate_strategy_value_p0(escape_product, loaded, v) == values[v]


def test_load_strategy_from_report(tmp_path, escape, escape_product):
    arena, _ = escape
    solution = solve_limit(escape_product)
    strategies = [extract_strategy_limit_p0(solution), extract_strategy_limit_p1(solution)]
    path = tmp_path / "report.yaml"
    path.write_text(render_report(solve_report(solution, "limit", value_map(solution), strategies)))
    assert load_strategy(path, arena, player=1).player == Player.ONE
    with pytest.raises(InstanceFormatError):
        strategy_from_dict({"player": 0}, arena)


# DOT

def dot_counts(text):
    graph = pydot.graph_from_dot_data(text)[0]
    nodes = [n for n in graph.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    return graph, nodes, graph.get_edges()


def test_base_dot_export(detour_product):
    graph, nodes, edges = dot_counts(dot_exporter.export_base(detour_product))
    assert len(nodes) == 7
    assert len(edges) == 14
    assert str(graph.get_node("n0")[0].get("peripheries")) == "2"
    assert graph.get_node("n1")[0].get("peripheries") is None
    assert graph.get_node("n1")[0].get("shape") == "box"


def test_product_dot_export(detour_product):
    _, nodes, edges = dot_counts(dot_exporter.export_product(detour_product))
    assert len(nodes) == detour_product.num_vertices
    assert len(edges) == detour_product.arena.num_edges


def test_dot_overlays(escape, escape_product):
    arena, _ = escape
    solution = solve_limit(escape_product)
    sigma = extract_strategy_limit_p0(solution)
    text = dot_exporter.export_base(escape_product, value_map(solution), sigma)
    graph, _, edges = dot_counts(text)
    bold = [(e.get_source(), e.get_destination()) for e in edges if e.get("style") == "bold"]
    assert ("n1", "n0") in bold
    assert "r=7" in graph.get_node("n1")[0].get("label")
    assert "r=inf" in graph.get_node("n4")[0].get("label")


def test_plain_dot_has_no_overlay(detour):
    arena, _ = detour
    text = dot_exporter.export(arena)
    _, nodes, edges = dot_counts(text)
    assert len(nodes) == 7
    assert all(e.get("style") is None for e in edges)
