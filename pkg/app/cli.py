"""Command line: solve, verify, export-dot and generate."""
import argparse
import logging
import sys

from config import config
from core.arena import Player
from core.product import product_from_dfa
from errors import EXIT_INVALID_INPUT, EXIT_INVARIANT_BROKEN, EXIT_OK, GameError, ParameterError
from formats.dot import dot_exporter
from formats.instance import parse_instance, serialize_instance
from formats.report import load_strategy, render_report, solve_report, trace_frame, value_frame
from oracle.generators import generate_family_15_1, generate_family_15_2, random_instance
from oracle.verify import FAIL, InstanceVerifier, instance_verifier, verify_files
from solvers.limit import (extract_strategy_limit_p0, extract_strategy_limit_p1, product_strategy_limit_p0,
                           solve_limit, value_map)
from solvers.reachability import (extract_strategy_reach_p0, extract_strategy_reach_p1, product_strategy_reach,
                                  solve_reach)
from utils.helpers import setup_logging

MODES = ("reach", "limit")
FAMILIES = ("15.1", "15.2", "random")
LOAD_FAILURE = "instance loads and fits"


def run_solve(arena, dfa, mode="limit"):
    """Solve one instance; returns (solution, base values, [sigma, tau])"""
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}, expected one of {', '.join(MODES)}")
    product = product_from_dfa(arena, dfa)
    if mode == "reach":
        solution = solve_reach(product, product.goal)
        strategies = [extract_strategy_reach_p0(solution), extract_strategy_reach_p1(solution)]
    else:
        solution = solve_limit(product)
        strategies = [extract_strategy_limit_p0(solution), extract_strategy_limit_p1(solution)]
    return solution, value_map(solution), strategies


def render_table(frame, table_format=None):
    table_format = table_format or config.TABLE_FORMAT
    if table_format == "csv":
        return frame.to_csv()
    return frame.to_string()


def cmd_solve(args):
    arena, dfa = parse_instance(args.instance)
    solution, values, strategies = run_solve(arena, dfa, args.mode)
    report = solve_report(solution, args.mode, values, strategies, include_trace=args.trace)
    text = render_report(report)

    if args.output == "-":
        print(text, end="")
        return EXIT_OK

    print(render_table(value_frame(values, arena).set_index("vertex"), args.format))
    if args.trace:
        print()
        print(render_table(trace_frame(solution), args.format))
    if args.output:
        with open(args.output, 'w') as file:
            file.write(text)
        logging.info(f"Wrote solve report to {args.output}")
    return EXIT_OK


def cmd_verify(args):
    if args.strategy:
        if len(args.instances) != 1:
            raise ParameterError("--strategy needs exactly one instance")
        arena, dfa = parse_instance(args.instances[0])
        strategy = load_strategy(args.strategy, arena, args.player)
        verifier = InstanceVerifier(args.max_product_vertices) if args.max_product_vertices else instance_verifier
        results = [verifier.verify(arena, dfa, name=args.instances[0], strategy=strategy, force=args.force)]
    else:
        results = verify_files(args.instances, jobs=args.jobs, force=args.force)

    print(render_table(instance_verifier.to_frame(results), args.format))
    checks = [check for result in results for check in result["checks"]]
    if any(c["property"] == LOAD_FAILURE for c in checks):
        return EXIT_INVALID_INPUT
    if any(c["status"] == FAIL for c in checks):
        return EXIT_INVARIANT_BROKEN
    return EXIT_OK


def _overlay(product, solution, mode):
    if mode == "reach":
        strategy = product_strategy_reach(solution, Player.ZERO)
    else:
        strategy = product_strategy_limit_p0(solution)
    return {v: strategy.next_move(v, strategy.memory.init(v)) for v in product.arena.owned_by(Player.ZERO)}


def cmd_export_dot(args):
    arena, dfa = parse_instance(args.instance)
    product = product_from_dfa(arena, dfa)

    if args.solve is None:
        text = dot_exporter.export_product(product) if args.product else dot_exporter.export_base(product)
    else:
        solution, values, strategies = run_solve(arena, dfa, args.solve)
        if args.product:
            text = dot_exporter.export_product(product, solution.fixpoint, _overlay(product, solution, args.solve))
        else:
            text = dot_exporter.export_base(product, values, strategies[0])

    if args.output:
        with open(args.output, 'w') as file:
            file.write(text)
        logging.info(f"Wrote DOT to {args.output}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_generate(args):
    if args.family == "15.1":
        arena, dfa = generate_family_15_1(args.n, args.s)
    elif args.family == "15.2":
        arena, dfa = generate_family_15_2(args.m, args.n, args.W)
    else:
        colors = args.colors.split(",") if args.colors else None
        arena, dfa = random_instance(args.vertices, args.dfa_states, args.weight_cap, args.seed,
                                     colors, args.max_out_degree)

    text = serialize_instance(arena, dfa)
    if args.output:
        with open(args.output, 'w') as file:
            file.write(text)
        logging.info(f"Wrote {args.family} instance to {args.output}")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="limit-games", description="Weighted limit game solver")
    parser.add_argument("--log-level", default=None, help="overrides WLG_LOG_LEVEL and config.yaml")
    parser.add_argument("--format", choices=["table", "csv"], default=None, help="text table layout")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="compute values and optimal strategies")
    solve.add_argument("instance")
    solve.add_argument("--mode", choices=MODES, default="limit")
    solve.add_argument("--trace", action="store_true", help="include the full iteration trace")
    solve.add_argument("--output", help="write the YAML report here ('-' prints it instead of tables)")
    solve.set_defaults(handler=cmd_solve)

    verify = commands.add_parser("verify", help="cross-check solvers against the oracles")
    verify.add_argument("instances", nargs="+")
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--strategy", help="strategy or solve report file to check as well")
    verify.add_argument("--player", type=int, choices=[0, 1], default=0)
    verify.add_argument("--force", action="store_true", help="ignore the product size guard")
    verify.add_argument("--max-product-vertices", type=int, default=None)
    verify.set_defaults(handler=cmd_verify)

    dot = commands.add_parser("export-dot", help="Graphviz rendering of an instance")
    dot.add_argument("instance")
    dot.add_argument("--product", action="store_true", help="export the product arena")
    dot.add_argument("--solve", choices=MODES, default=None, help="overlay ranks and Player 0 moves")
    dot.add_argument("--output")
    dot.set_defaults(handler=cmd_export_dot)

    generate = commands.add_parser("generate", help="write a parameterized or random instance")
    generate.add_argument("family", choices=FAMILIES)
    generate.add_argument("--n", type=int, default=2)
    generate.add_argument("--s", type=int, default=2)
    generate.add_argument("--m", type=int, default=2)
    generate.add_argument("--W", type=int, default=1)
    generate.add_argument("--vertices", type=int, default=None)
    generate.add_argument("--dfa-states", type=int, default=None)
    generate.add_argument("--weight-cap", type=int, default=None)
    generate.add_argument("--max-out-degree", type=int, default=None)
    generate.add_argument("--colors", default=None, help="comma separated colour alphabet")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--output")
    generate.set_defaults(handler=cmd_generate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    logging.info(f"Running {args.command}")
    try:
        code = args.handler(args)
    except GameError as e:
        logging.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logging.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    logging.info(f"Finished {args.command} with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
