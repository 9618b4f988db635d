import os

import pytest

from core.plays import Lasso
from core.product import direct_product, product_from_dfa
from formats.instance import parse_instance
from oracle.generators import random_instance

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")
DETOUR = os.path.join(DATA_DIR, "detour.yaml")
ESCAPE = os.path.join(DATA_DIR, "escape.yaml")

RANDOM_SEEDS = range(200)


@pytest.fixture
def detour_path():
    return DETOUR


@pytest.fixture
def escape_path():
    return ESCAPE


@pytest.fixture
def detour():
    return parse_instance(DETOUR)


@pytest.fixture
def escape():
    return parse_instance(ESCAPE)


@pytest.fixture
def detour_direct(detour):
    """Detour arena solved directly with goal {v0}"""
    arena, _ = detour
    return direct_product(arena, {arena.index("v0")})


@pytest.fixture
def escape_direct(escape):
    """Escape arena solved directly with goal {v0, v2, v3}"""
    arena, _ = escape
    return direct_product(arena, {arena.index(name) for name in ("v0", "v2", "v3")})


@pytest.fixture
def detour_product(detour):
    return product_from_dfa(*detour)


@pytest.fixture
def escape_product(escape):
    return product_from_dfa(*escape)


@pytest.fixture(scope="session")
def random_games():
    """Seeded (arena, dfa, product) triples with at most 4 vertices, 2 DFA states and weights up to 3"""
    games = []
    for seed in RANDOM_SEEDS:
        arena, dfa = random_instance(vertices=4, dfa_states=2, weight_cap=3, seed=seed)
        games.append((arena, dfa, product_from_dfa(arena, dfa)))
    return games


@pytest.fixture(scope="session")
def random_products(random_games):
    return [product for _, _, product in random_games]


def _random_walk(arena, rng, length, start=None):
    """A path of ``length`` vertices following uniformly chosen edges"""
    path = [int(rng.integers(arena.num_vertices)) if start is None else start]
    while len(path) < length:
        targets = arena.successors[path[-1]]
        path.append(targets[int(rng.integers(len(targets)))][0])
    return path


def _random_lasso(arena, rng, start=None):
    """Walk until a vertex repeats and close the loop there"""
    v = int(rng.integers(arena.num_vertices)) if start is None else start
    walk = []
    while v not in walk:
        walk.append(v)
        targets = arena.successors[v]
        v = targets[int(rng.integers(len(targets)))][0]
    split = walk.index(v)
    return Lasso(stem=walk[:split], loop=walk[split:])


@pytest.fixture
def random_walk():
    return _random_walk


@pytest.fixture
def random_lasso():
    return _random_lasso
