import random
from pathlib import Path

import pytest

from src.decomposition import TreeDecomposition
from src.graph import Graph
from src.utils.families import WORKED_EXAMPLE_CLIQUES, worked_example

FIXTURES = Path(__file__).parent / "fixtures"

# The clique tree C4-C2-C1, C2-C3-C5 over the five maximal cliques.
WORKED_EXAMPLE_TREE_EDGES = [(3, 1), (1, 0), (1, 2), (2, 4)]

SEPARATOR = frozenset({3, 4, 5, 8})
SMALLER_SEPARATOR = frozenset({3, 5, 8})


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def fig1() -> Graph:
    return worked_example()


@pytest.fixture
def fig1_td() -> TreeDecomposition:
    return TreeDecomposition.build(WORKED_EXAMPLE_CLIQUES, WORKED_EXAMPLE_TREE_EDGES)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0)
