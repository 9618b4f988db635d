import pytest

import solvers.limit as limit
from core.arena import Arena, Edge, Player, Vertex
from core.product import direct_product
from core.weights import INF
from errors import GameError, InvariantError, ParameterError
from solvers.limit import (VertexKind, build_hierarchy, choose_h, classify_vertex, extract_strategy_limit_p0,
                           extract_strategy_limit_p1, lift_limit, rank_bound, solve_limit, value_map,
                           winning_region)
from solvers.ranking import Ranking
from strategies.machine import strategy_size

ESCAPE_TRACE = [
    [0, 0, 0, 0, 0],
    [4, 2, 3, INF, INF],
    [4, 3, INF, INF, INF],
    [4, 7, INF, INF, INF],
    [4, 7, INF, INF, INF],
]


def test_escape_trace_is_golden(escape_direct):
    solution = solve_limit(escape_direct)
    assert [r.to_list() for r in solution.trace] == ESCAPE_TRACE
    assert solution.fixpoint.to_list() == [4, 7, INF, INF, INF]
    assert solution.stabilization_index == 3
    assert solution.stabilization_index <= len(escape_direct.goal) + 1


def test_escape_through_the_automaton(escape, escape_product):
    arena, _ = escape
    values = value_map(solve_limit(escape_product))
    assert [values[v] for v in range(arena.num_vertices)] == [4, 7, INF, INF, INF]


def test_hierarchy_levels_under_r1(escape_direct):
    r1 = Ranking.from_weights([4, 2, 3, INF, INF])
    hierarchy = build_hierarchy(r1, escape_direct, escape_direct.goal)
    assert hierarchy.ranks == (3, 4, INF)
    assert hierarchy.levels == (frozenset({2}), frozenset({0, 2}), frozenset({0, 2, 3}))
    assert hierarchy.completed[0].to_list() == [INF, 2, INF, INF, INF]
    assert hierarchy.completed[1].to_list() == [4, 2, INF, INF, INF]
    assert hierarchy.completed[2].to_list() == [4, 2, 3, INF, INF]


def test_single_limit_lift(escape_direct):
    r1 = Ranking.from_weights([4, 2, 3, INF, INF])
    assert lift_limit(r1, escape_direct, escape_direct.goal).to_list() == [4, 3, INF, INF, INF]


def test_empty_goal_short_circuits(escape_direct):
    solution = solve_limit(escape_direct, goal=set())
    assert solution.fixpoint.to_list() == [INF] * 5
    assert solution.hierarchies == ()
    assert lift_limit(Ranking.constant(5, 0), escape_direct, set()).to_list() == [INF] * 5
    with pytest.raises(ParameterError) as excinfo:
        build_hierarchy(Ranking.constant(5, 0), escape_direct, set())
    assert isinstance(excinfo.value, GameError)


def test_infinite_level_never_changes_the_lift(random_products):
    for product in random_products:
        if not product.goal:
            continue
        solution = solve_limit(product)
        for ranking in solution.trace:
            with_inf = lift_limit(ranking, product, product.goal, include_infinite=True)
            without = lift_limit(ranking, product, product.goal, include_infinite=False)
            assert with_inf == without


def test_limit_iteration_only_raises_ranks(random_products):
    for product in random_products[:50]:
        solution = solve_limit(product)
        for before, after in zip(solution.trace, solution.trace[1:]):
            assert all(a >= b for a, b in zip(after, before))


def test_iteration_and_value_bounds(random_products):
    for product in random_products:
        solution = solve_limit(product)
        assert solution.stabilization_index <= len(product.goal) + 1
        bound = rank_bound(product)
        assert all(value <= bound for value in solution.fixpoint if value != INF)


def test_choose_h_and_vertex_types(escape_direct):
    solution = solve_limit(escape_direct)
    assert choose_h(solution, 1) == 1
    assert choose_h(solution, 0) == 1

    v0 = classify_vertex(solution, 0)
    assert v0.kind == VertexKind.ONE and v0.level == 1
    v1 = classify_vertex(solution, 1)
    assert v1.kind == VertexKind.ONE and v1.level == 1


def test_zero_vertex_type():
    arena = Arena((Vertex("g", Player.ZERO, "x"),), (Edge(0, 0, 0),))
    solution = solve_limit(direct_product(arena, {0}))
    assert solution.fixpoint.to_list() == [0]
    assert classify_vertex(solution, 0).kind == VertexKind.ZERO


def test_escape_strategies(escape_direct):
    solution = solve_limit(escape_direct)
    sigma = extract_strategy_limit_p0(solution)
    tau = extract_strategy_limit_p1(solution)
    assert sigma.next_move(1, sigma.memory.init(1)) == 0
    assert tau.next_move(0, tau.memory.init(0)) == 0
    assert strategy_size(sigma) == solution.fixpoint_hierarchy.size


def test_winning_region(escape_direct):
    assert winning_region(solve_limit(escape_direct)) == {0, 1}


def test_decreasing_iteration_is_an_invariant_error(escape_direct, monkeypatch):
    def shrink(r, hierarchy):
        return Ranking.constant(len(r), 0) if r.to_list() != [0] * len(r) else Ranking.constant(len(r), 1)

    monkeypatch.setattr(limit, "_apply_hierarchy", shrink)
    with pytest.raises(InvariantError):
        limit.solve_limit(escape_direct)
