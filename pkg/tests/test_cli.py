import yaml

import cli
from core.product import product_from_dfa
from errors import EXIT_INVALID_INPUT, EXIT_INVARIANT_BROKEN, EXIT_OK, IterationBoundError
from formats.instance import parse_instance
from formats.report import parse_trace
from solvers.limit import solve_limit


def test_solve_reach_prints_the_value_table(detour_path, capsys):
    assert cli.main(["solve", detour_path, "--mode", "reach"]) == EXIT_OK
    out = capsys.readouterr().out
    lines = {line.split()[0]: line.split()[-1] for line in out.splitlines()[2:]}
    assert lines == {"v0": "0", "v1": "5", "v2": "4", "v3": "4", "v4": "11", "v5": "inf", "v6": "inf"}


def test_solve_trace_reproduces_the_solver(escape_path, capsys):
    assert cli.main(["solve", escape_path, "--trace", "--output", "-"]) == EXIT_OK
    out = capsys.readouterr().out
    solution = solve_limit(product_from_dfa(*parse_instance(escape_path)))
    assert parse_trace(out) == [ranking.to_list() for ranking in solution.trace]
    assert yaml.safe_load(out)["values"]["v1"] == "7"


def test_solve_writes_a_report(detour_path, tmp_path, capsys):
    report = tmp_path / "report.yaml"
    assert cli.main(["solve", detour_path, "--output", str(report)]) == EXIT_OK
    data = yaml.safe_load(report.read_text())
    assert data["mode"] == "limit"
    assert "trace" not in data
    assert set(data["strategies"]) == {"player0", "player1"}


def test_no_reachable_goal_still_succeeds(tmp_path, capsys):
    instance = tmp_path / "lost.yaml"
    instance.write_text(
        "arena:\n"
        "  vertices:\n"
        "  - {id: a, owner: 0, color: plain}\n"
        "  edges:\n"
        "  - {from: a, to: a, weight: 1}\n"
        "dfa:\n"
        "  states: [idle, seen]\n"
        "  initial: idle\n"
        "  accepting: [seen]\n"
        "  transitions:\n"
        "  - {from: idle, color: plain, to: idle}\n"
        "  - {from: seen, color: plain, to: idle}\n"
    )
    assert cli.main(["solve", str(instance)]) == EXIT_OK
    assert "inf" in capsys.readouterr().out


def test_invalid_input_exit_code(tmp_path, capsys):
    instance = tmp_path / "broken.yaml"
    instance.write_text("arena: [\n")
    assert cli.main(["solve", str(instance)]) == EXIT_INVALID_INPUT
    assert "error:" in capsys.readouterr().err
    assert cli.main(["solve", str(tmp_path / "missing.yaml")]) == EXIT_INVALID_INPUT


def test_invariant_exit_code(escape_path, monkeypatch):
    def broken(product):
        raise IterationBoundError("did not stabilize")

    monkeypatch.setattr(cli, "solve_limit", broken)
    assert cli.main(["solve", escape_path]) == EXIT_INVARIANT_BROKEN


def test_verify_fixtures(detour_path, escape_path, capsys):
    assert cli.main(["verify", detour_path, escape_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "FAIL" not in out


def test_verify_rejects_a_corrupted_strategy(escape_path, tmp_path, capsys):
    report = tmp_path / "report.yaml"
    assert cli.main(["solve", escape_path, "--output", str(report)]) == EXIT_OK

    data = yaml.safe_load(report.read_text())
    strategy = data["strategies"]["player0"]
    for row in strategy["next"]:
        if row["vertex"] == "v1":
            row["to"] = "v2"
    corrupted = tmp_path / "corrupted.yaml"
    corrupted.write_text(yaml.safe_dump(strategy))

    assert cli.main(["verify", escape_path, "--strategy", str(report)]) == EXIT_OK
    assert cli.main(["verify", escape_path, "--strategy", str(corrupted)]) == EXIT_INVARIANT_BROKEN
    assert "FAIL" in capsys.readouterr().out


def test_verify_strategy_needs_one_instance(detour_path, escape_path, tmp_path):
    assert cli.main(["verify", detour_path, escape_path, "--strategy", "x.yaml"]) == EXIT_INVALID_INPUT


def test_verify_reports_unloadable_files(tmp_path):
    broken = tmp_path / "broken.yaml"
    broken.write_text("arena: 3\n")
    assert cli.main(["verify", str(broken)]) == EXIT_INVALID_INPUT


def test_export_dot(detour_path, capsys):
    assert cli.main(["export-dot", detour_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert cli.main(["export-dot", detour_path, "--product", "--solve", "reach"]) == EXIT_OK
    assert "bold" in capsys.readouterr().out


def test_generate_then_solve(tmp_path, capsys):
    instance = tmp_path / "family.yaml"
    assert cli.main(["generate", "15.2", "--m", "2", "--n", "2", "--W", "1", "--output", str(instance)]) == EXIT_OK
    assert cli.main(["solve", str(instance), "--output", "-"]) == EXIT_OK
    assert yaml.safe_load(capsys.readouterr().out)["values"]["v1"] == "4"


def test_generate_random_is_deterministic(capsys):
    assert cli.main(["generate", "random", "--seed", "7"]) == EXIT_OK
    first = capsys.readouterr().out
    assert cli.main(["generate", "random", "--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out == first


def test_generate_bad_parameters(capsys):
    assert cli.main(["generate", "15.1", "--s", "1"]) == EXIT_INVALID_INPUT
