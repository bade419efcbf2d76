import random

import networkx as nx
import pytest

from src.errors import MembershipError, SelfLoopError
from src.graph import (
    Graph,
    check_membership,
    connected_components,
    induced_subgraph,
    remove_vertices,
)
from src.utils import families
from tests.conftest import SEPARATOR


class TestGraph:
    def test_edges_are_normalized_and_deduplicated(self):
        g = Graph.from_edges([1, 2, 3], [(2, 1), (1, 2), (3, 2)])
        assert g.edges == frozenset({(1, 2), (2, 3)})
        assert g.edge_count == 2

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError):
            Graph.from_edges([1], [(1, 1)])

    def test_foreign_endpoint_rejected(self):
        with pytest.raises(MembershipError):
            Graph(vertices=frozenset({1}), edges=frozenset({(1, 2)}))

    def test_neighbors(self, fig1):
        assert fig1.neighbors(3) == frozenset({1, 2, 4, 5, 8})
        assert fig1.has_edge(8, 3)
        assert not fig1.has_edge(1, 9)

    def test_networkx_round_trip(self, fig1):
        assert Graph.from_networkx(fig1.to_networkx()) == fig1

    def test_hashable(self, fig1):
        assert hash(fig1) == hash(families.worked_example())

    @pytest.mark.parametrize("n, expected", [(0, True), (1, True), (4, True)])
    def test_complete_is_clique(self, n, expected):
        assert families.complete(n).is_clique() is expected

    def test_path_is_not_clique(self):
        assert not families.path(3).is_clique()


class TestInducedSubgraph:
    def test_separator_of_worked_example(self, fig1):
        h = induced_subgraph(fig1, SEPARATOR)
        assert h.vertices == SEPARATOR
        assert h.edges == frozenset({(3, 4), (3, 5), (4, 5), (3, 8), (4, 8)})

    def test_empty_selection(self, fig1):
        assert induced_subgraph(fig1, []) == Graph.empty()

    def test_all_vertices(self, fig1):
        assert induced_subgraph(fig1, fig1.vertices) == fig1

    def test_foreign_vertex(self, fig1):
        with pytest.raises(MembershipError):
            induced_subgraph(fig1, [3, 11])


class TestRemoveVertices:
    def test_separator_of_worked_example(self, fig1):
        rest = remove_vertices(fig1, SEPARATOR)
        assert rest.vertices == frozenset({1, 2, 6, 7, 9, 10})
        assert rest.edges == frozenset({(1, 2), (6, 7), (9, 10)})

    def test_nothing_removed(self, fig1):
        assert remove_vertices(fig1, set()) == fig1

    def test_everything_removed(self, fig1):
        assert remove_vertices(fig1, fig1.vertices) == Graph.empty()


class TestConnectedComponents:
    def test_worked_example(self, fig1):
        assert connected_components(remove_vertices(fig1, SEPARATOR)) == [
            frozenset({1, 2}),
            frozenset({6, 7}),
            frozenset({9, 10}),
        ]

    def test_empty_graph(self):
        assert connected_components(Graph.empty()) == []

    def test_edgeless(self):
        assert connected_components(families.edgeless(3)) == [
            frozenset({1}),
            frozenset({2}),
            frozenset({3}),
        ]

    def test_check_membership(self, fig1):
        assert check_membership(fig1, [1, 1, 2]) == frozenset({1, 2})

    @pytest.mark.parametrize("seed", range(5))
    def test_components_partition_the_vertices(self, seed):
        rng = random.Random(seed)
        for _ in range(50):
            n, p = rng.randint(0, 12), rng.uniform(0.05, 0.4)
            g = families.random_gnp(n, p, seed=rng.randrange(2**31))
            components = connected_components(g)
            assert frozenset().union(*components) == g.vertices
            assert sum(len(c) for c in components) == g.vertex_count
            assert [min(c) for c in components] == sorted(min(c) for c in components)
            for c in components:
                assert nx.is_connected(induced_subgraph(g, c).to_networkx())
            for u, v in g.edges:
                assert any({u, v} <= c for c in components)


class TestFamilies:
    def test_worked_example_size(self, fig1):
        assert (fig1.vertex_count, fig1.edge_count) == (10, 14)

    def test_grid_is_labelled_from_one(self):
        g = families.grid(4, 4)
        assert g.vertices == frozenset(range(1, 17))
        assert g.edge_count == 24

    def test_random_tree_is_a_tree(self):
        g = families.random_tree(12, seed=3)
        assert nx.is_tree(g.to_networkx())
        assert g.vertices == frozenset(range(1, 13))

    def test_random_gnp_is_reproducible(self):
        assert families.random_gnp(9, 0.4, seed=1) == families.random_gnp(9, 0.4, seed=1)
