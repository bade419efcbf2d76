import random

import networkx as nx
import pytest

from src.decomposition import (
    TreeDecomposition,
    ViolationKind,
    find_cluster_containing,
    validate,
    width,
)
from src.elimination import greedy_treewidth
from src.errors import NotFoundError
from src.utils import families
from src.utils.families import WORKED_EXAMPLE_CLIQUES
from tests.conftest import WORKED_EXAMPLE_TREE_EDGES


def _random_graph(rng, min_vertices):
    n = rng.randint(min_vertices, 10)
    return families.random_gnp(n, rng.uniform(0.2, 0.8), seed=rng.randrange(2**31))


class TestWidth:
    def test_clique_bags(self, fig1_td):
        assert width(fig1_td) == 2

    def test_single_vertex_bag(self):
        assert width(TreeDecomposition.build([{1}])) == 0

    def test_trivial(self, fig1):
        assert width(TreeDecomposition.trivial(fig1)) == 9

    def test_empty(self):
        assert width(TreeDecomposition.empty()) == -1


class TestValidate:
    def test_clique_tree(self, fig1, fig1_td):
        verdict = validate(fig1_td, fig1)
        assert verdict.valid, verdict.violations

    @pytest.mark.parametrize(
        "g",
        [families.worked_example(), families.complete(4), families.edgeless(3), families.grid(3, 3)],
    )
    def test_trivial_is_valid(self, g):
        assert validate(TreeDecomposition.trivial(g), g).valid

    def test_empty_graph(self):
        assert validate(TreeDecomposition.empty(), families.edgeless(0)).valid

    def test_deleted_vertex(self, fig1):
        bags = [bag - {7} for bag in WORKED_EXAMPLE_CLIQUES]
        verdict = validate(TreeDecomposition.build(bags, WORKED_EXAMPLE_TREE_EDGES), fig1)
        assert not verdict.valid
        uncovered = [v for v in verdict.violations if v.kind == ViolationKind.VERTEX_UNCOVERED]
        assert [v.witness for v in uncovered] == [[7]]
        assert ViolationKind.EDGE_UNCOVERED in verdict.kinds()

    def test_uncovered_edge(self):
        g = families.path(3)
        t = TreeDecomposition.build([{1}, {2, 3}], [(0, 1)])
        verdict = validate(t, g)
        assert verdict.kinds() == {ViolationKind.EDGE_UNCOVERED}
        assert verdict.violations[0].witness == [1, 2]

    def test_disconnected_occurrence(self):
        g = families.path(3)
        t = TreeDecomposition.build([{1, 2}, {3}, {2, 3}], [(0, 1), (1, 2)])
        verdict = validate(t, g)
        assert verdict.kinds() == {ViolationKind.DISCONNECTED_OCCURRENCE}
        assert verdict.violations[0].witness == [2]

    def test_cycle_in_tree(self):
        g = families.path(3)
        t = TreeDecomposition.build([{1, 2}, {2, 3}, {2}], [(0, 1), (1, 2), (0, 2)])
        assert ViolationKind.TREE_SHAPE in validate(t, g).kinds()

    def test_forest_is_not_a_tree(self):
        g = families.edgeless(2)
        t = TreeDecomposition.build([{1}, {2}])
        assert validate(t, g).kinds() == {ViolationKind.TREE_SHAPE}

    def test_missing_bag_index(self):
        g = families.path(2)
        t = TreeDecomposition.build([{1, 2}], [(0, 3)])
        assert validate(t, g).kinds() == {ViolationKind.TREE_SHAPE}

    def test_foreign_vertex(self):
        g = families.path(2)
        verdict = validate(TreeDecomposition.build([{1, 2, 9}]), g)
        assert verdict.kinds() == {ViolationKind.FOREIGN_VERTEX}
        assert verdict.violations[0].witness == [9]


class TestFindClusterContaining:
    def test_first_of_two_candidates(self, fig1_td):
        # Both {3,4,5} and {3,4,8} hold 3 and 4.
        assert find_cluster_containing(fig1_td, {3, 4}) == 1

    def test_empty_set(self, fig1_td):
        assert find_cluster_containing(fig1_td, set()) == 0

    def test_not_a_clique(self, fig1_td):
        with pytest.raises(NotFoundError):
            find_cluster_containing(fig1_td, {1, 9})

    def test_every_clique_fits(self, fig1, fig1_td):
        for u, v in fig1.edges:
            index = find_cluster_containing(fig1_td, {u, v})
            assert {u, v} <= fig1_td.bags[index]

    @pytest.mark.parametrize("seed", range(5))
    def test_every_clique_fits_a_random_decomposition(self, seed):
        rng = random.Random(seed)
        for _ in range(40):
            g = _random_graph(rng, 1)
            _, t = greedy_treewidth(g)
            for clique in nx.find_cliques(g.to_networkx()):
                assert set(clique) <= t.bags[find_cluster_containing(t, clique)]


def _uncovered(verdict):
    return {
        (v.kind, tuple(v.witness))
        for v in verdict.violations
        if v.kind in (ViolationKind.VERTEX_UNCOVERED, ViolationKind.EDGE_UNCOVERED)
    }


class TestBagEnlargement:
    @pytest.mark.parametrize("seed", range(5))
    def test_coverage_is_monotone(self, seed):
        rng = random.Random(seed)
        for _ in range(40):
            g = _random_graph(rng, 2)
            _, t = greedy_treewidth(g)
            vertices = sorted(g.vertices)
            # Drop a vertex from some bags so that coverage may fail.
            dropped = rng.choice(vertices)
            bags = [b - {dropped} if rng.random() < 0.5 else b for b in t.bags]
            before = _uncovered(validate(TreeDecomposition.build(bags, t.tree_edges), g))

            enlarged = [b | set(rng.sample(vertices, rng.randint(0, 2))) for b in bags]
            after = _uncovered(validate(TreeDecomposition.build(enlarged, t.tree_edges), g))
            assert after <= before, (g, bags, enlarged)

    def test_valid_decomposition_stays_covered(self, fig1, fig1_td):
        enlarged = [b | {1, 10} for b in fig1_td.bags]
        verdict = validate(TreeDecomposition.build(enlarged, fig1_td.tree_edges), fig1)
        assert not _uncovered(verdict)
