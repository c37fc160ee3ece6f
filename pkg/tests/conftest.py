import random
from functools import lru_cache
from itertools import combinations

import pytest

from apexrig.config import RunConfig
from apexrig.graph import Graph, enumerate_connected

# Fixed primes keep the tests independent of $APEXRIG_PRIMES.
TEST_PRIMES = (2305843009213693951, 4611686018427387847)


@lru_cache(maxsize=None)
def connected(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_connected(n))


def connected_upto(hi: int, lo: int = 1) -> list[Graph]:
    return [g for n in range(lo, hi + 1) for g in connected(n)]


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_corpus(count: int, seed: int, max_n: int = 10, min_n: int = 1) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng, rng.randint(min_n, max_n), rng.random()) for _ in range(count)]


@pytest.fixture
def cfg() -> RunConfig:
    return RunConfig(primes=TEST_PRIMES)
