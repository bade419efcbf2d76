"""Named graph families, relabelled to the external 1..n convention."""

import networkx as nx

from src.graph import Graph

# Edges read off the cliques C_1..C_5 of the worked example.
WORKED_EXAMPLE_EDGES = [
    (1, 2), (1, 3), (2, 3),
    (3, 4), (3, 5), (4, 5),
    (3, 8), (4, 8),
    (5, 6), (5, 7), (6, 7),
    (8, 9), (8, 10), (9, 10),
]
WORKED_EXAMPLE_CLIQUES = [
    frozenset({1, 2, 3}),
    frozenset({3, 4, 5}),
    frozenset({3, 4, 8}),
    frozenset({5, 6, 7}),
    frozenset({8, 9, 10}),
]


def _relabel(nx_graph: nx.Graph) -> Graph:
    return Graph.from_networkx(
        nx.convert_node_labels_to_integers(nx_graph, first_label=1, ordering="sorted")
    )


def worked_example() -> Graph:
    return Graph.from_edges(range(1, 11), WORKED_EXAMPLE_EDGES)


def path(n: int) -> Graph:
    return _relabel(nx.path_graph(n))


def cycle(n: int) -> Graph:
    return _relabel(nx.cycle_graph(n))


def complete(n: int) -> Graph:
    return _relabel(nx.complete_graph(n))


def edgeless(n: int) -> Graph:
    return _relabel(nx.empty_graph(n))


def star(leaves: int) -> Graph:
    return _relabel(nx.star_graph(leaves))


def grid(rows: int, cols: int) -> Graph:
    return _relabel(nx.grid_2d_graph(rows, cols))


def random_tree(n: int, seed: int) -> Graph:
    return _relabel(nx.random_labeled_tree(n, seed=seed))


def random_gnp(n: int, p: float, seed: int) -> Graph:
    return _relabel(nx.gnp_random_graph(n, p, seed=seed))
