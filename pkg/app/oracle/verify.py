import logging
import multiprocessing

import pandas as pd

from config import config
from core.arena import Player
from core.product import product_from_dfa
from core.weights import INF
from errors import GameError, InstanceTooLargeError
from formats.instance import parse_instance
from oracle.buchi import buchi_attractor, oracle_limit_values
from oracle.enumeration import enumerate_positional_reach
from oracle.evaluation import evaluate_strategy_value_p0, evaluate_strategy_value_p1
from solvers.limit import (extract_strategy_limit_p0, extract_strategy_limit_p1, rank_bound,
                           solve_limit, value_map)
from solvers.reachability import extract_strategy_reach_p0, extract_strategy_reach_p1, solve_reach
from strategies.machine import strategy_size
from utils.helpers import format_weight

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


class InstanceVerifier:
    """Cross-checks the solvers against the independent oracles"""

    def __init__(self, max_product_vertices=None, enumeration_limit=None):
        self.max_product_vertices = max_product_vertices or config.VERIFY_MAX_PRODUCT_VERTICES
        self.enumeration_limit = enumeration_limit or config.ENUMERATION_MAX_PRODUCT_VERTICES

    def verify(self, arena, dfa, name="instance", strategy=None, force=False):
        """Run every check on one instance; returns a dict with a ``checks`` list"""
        product = product_from_dfa(arena, dfa)
        if product.num_vertices > self.max_product_vertices and not force:
            raise InstanceTooLargeError(
                f"{name}: {product.num_vertices} product vertices exceed the verify limit "
                f"{self.max_product_vertices} (use --force)"
            )

        checks = []

        def record(prop, status, detail=""):
            checks.append({"instance": name, "property": prop, "status": status, "detail": detail})
            if status == FAIL:
                logging.warning(f"{name}: {prop} failed: {detail}")

        vertices = range(arena.num_vertices)
        limit = solve_limit(product)
        values = value_map(limit)
        reach = solve_reach(product, product.goal)
        reach_values = {v: reach.fixpoint[product.initial_vertex(v)] for v in vertices}

        # iteration bounds
        record("reach iterations <= |V x M| + 1",
               PASS if reach.iterations <= product.num_vertices + 1 else FAIL,
               f"{reach.iterations} iterations")
        record("limit stabilization <= |F| + 1",
               PASS if limit.stabilization_index <= len(product.goal) + 1 else FAIL,
               f"stabilized at {limit.stabilization_index}")

        # value bound and strategy size
        bound = rank_bound(product)
        over = [arena.name(v) for v, x in values.items() if x != INF and x > bound]
        record("finite values <= (n*s + 1)*W", FAIL if over else PASS, ", ".join(over))

        sigma = extract_strategy_limit_p0(limit)
        tau = extract_strategy_limit_p1(limit)
        size_bound = arena.num_vertices * dfa.size * max(len(dfa.accepting), 1)
        record("Player 0 strategy size <= n*s*f",
               PASS if strategy_size(sigma) <= size_bound else FAIL,
               f"{strategy_size(sigma)} <= {size_bound}")

        # oracles
        oracle = oracle_limit_values(product)
        self._compare(record, "limit values = threshold oracle", values, oracle, arena)

        if product.num_vertices <= self.enumeration_limit:
            try:
                enumerated = enumerate_positional_reach(product, max_vertices=self.enumeration_limit)
                enumerated = {v: enumerated[product.initial_vertex(v)] for v in vertices}
                self._compare(record, "reach values = positional enumeration", reach_values, enumerated, arena)
            except InstanceTooLargeError as e:
                record("reach values = positional enumeration", SKIP, str(e))
        else:
            record("reach values = positional enumeration", SKIP,
                   f"{product.num_vertices} product vertices")

        region = buchi_attractor(product)
        buchi = {v for v in vertices if product.initial_vertex(v) in region}
        finite = {v for v, x in values.items() if x != INF}
        record("finite values = Büchi winning region",
               PASS if buchi == finite else FAIL,
               f"symmetric difference {sorted(arena.name(v) for v in buchi ^ finite)}" if buchi != finite else "")

        # strategies
        self._check_strategy(record, "Player 0 limit strategy realizes values", product, sigma, values, "limit")
        self._check_strategy(record, "Player 1 limit strategy realizes values", product, tau, values, "limit")
        opponent_infinite = {v for v in vertices if evaluate_strategy_value_p1(product, tau, v) == INF}
        record("Player 1 region = complement of Büchi region",
               PASS if opponent_infinite == set(vertices) - buchi else FAIL)
        self._check_strategy(record, "Player 0 reach strategy realizes values", product,
                             extract_strategy_reach_p0(reach), reach_values, "reach")
        self._check_strategy(record, "Player 1 reach strategy realizes values", product,
                             extract_strategy_reach_p1(reach), reach_values, "reach")

        if strategy is not None:
            self._check_strategy(record, "provided strategy realizes values", product, strategy, values, "limit")

        failed = sum(1 for c in checks if c["status"] == FAIL)
        logging.info(f"Verified {name}: {len(checks) - failed}/{len(checks)} checks without failure")
        return {
            "instance": name,
            "values": {arena.name(v): format_weight(x) for v, x in values.items()},
            "checks": checks,
            "passed": failed == 0,
        }

    def _compare(self, record, prop, ours, theirs, arena):
        diff = [f"{arena.name(v)}: {format_weight(ours[v])} != {format_weight(theirs[v])}"
                for v in ours if ours[v] != theirs[v]]
        record(prop, FAIL if diff else PASS, "; ".join(diff))

    def _check_strategy(self, record, prop, product, strategy, values, objective):
        evaluate = evaluate_strategy_value_p0 if strategy.player == Player.ZERO else evaluate_strategy_value_p1
        try:
            realized = {v: evaluate(product, strategy, v, objective) for v in values}
        except GameError as e:
            record(prop, FAIL, str(e))
            return
        self._compare(record, prop, realized, values, product.base)

    def to_frame(self, results):
        """Flatten verification results into one PASS/FAIL/SKIP table"""
        rows = [check for result in results for check in result["checks"]]
        return pd.DataFrame(rows, columns=["instance", "property", "status", "detail"])


instance_verifier = InstanceVerifier()


def _verify_file(job):
    path, force = job
    try:
        arena, dfa = parse_instance(path)
        return instance_verifier.verify(arena, dfa, name=str(path), force=force)
    except GameError as e:
        logging.error(f"Verification of {path} failed: {e}")
        return {"instance": str(path), "values": {}, "passed": False,
                "checks": [{"instance": str(path), "property": "instance loads and fits",
                            "status": FAIL, "detail": str(e)}]}


def verify_files(paths, jobs=1, force=False):
    """Verify many instance files, in a process pool when ``jobs > 1``"""
    work = [(path, force) for path in paths]
    if jobs <= 1 or len(work) <= 1:
        return [_verify_file(job) for job in work]
    with multiprocessing.Pool(processes=jobs) as pool:
        return pool.map(_verify_file, work)
