import random
from itertools import combinations, permutations

import networkx as nx
import pytest

from src.decomposition import validate, width
from src.elimination import (
    EliminationOrdering,
    GreedyStrategy,
    decomposition_from_ordering,
    greedy_ordering,
    greedy_treewidth,
    width_of_ordering,
)
from src.errors import PermutationError, SizeLimitError
from src.exact import exact_treewidth
from src.graph import Graph, induced_subgraph
from src.utils import families


def _all_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(
            range(1, n + 1), [p for i, p in enumerate(pairs) if mask >> i & 1]
        )


def _min_over_orderings(g):
    return min(
        (
            width_of_ordering(g, EliminationOrdering.of(order))
            for order in permutations(sorted(g.vertices))
        ),
        default=-1,
    )


def _brute_force_treewidth(g):
    """Minimum elimination width, searching orderings depth-first."""
    if not g.vertices:
        return -1
    best = g.vertex_count - 1
    seen = {}

    def search(neighbors, eliminated, current):
        nonlocal best
        if not neighbors:
            best = min(best, current)
            return
        if seen.get(eliminated, best + 1) <= current:
            return
        seen[eliminated] = current
        for v in sorted(neighbors):
            w = max(current, len(neighbors[v]))
            if w >= best:
                continue
            rest = {u: set(n) - {v} for u, n in neighbors.items() if u != v}
            for a in neighbors[v]:
                rest[a] |= neighbors[v] - {a}
            search(rest, eliminated | {v}, w)

    search({v: set(n) for v, n in g.adjacency.items()}, frozenset(), -1)
    return best


class TestEliminationOrdering:
    def test_clique_is_order_invariant(self):
        g = families.complete(4)
        for order in permutations(range(1, 5)):
            assert width_of_ordering(g, EliminationOrdering.of(order)) == 3

    def test_perfect_elimination_order(self, fig1):
        order = EliminationOrdering.of([1, 2, 6, 7, 9, 10, 5, 8, 3, 4])
        assert width_of_ordering(fig1, order) == 2

    def test_not_a_permutation(self, fig1):
        with pytest.raises(PermutationError):
            width_of_ordering(fig1, EliminationOrdering.of([1, 2, 3]))
        with pytest.raises(PermutationError):
            width_of_ordering(fig1, EliminationOrdering.of([1] * 10))

    def test_empty_graph(self):
        assert width_of_ordering(Graph.empty(), EliminationOrdering.of([])) == -1

    @pytest.mark.parametrize("seed", range(10))
    def test_decomposition_matches_ordering_width(self, seed):
        g = families.random_gnp(9, 0.4, seed=seed)
        order = list(g.vertices)
        random.Random(seed).shuffle(order)
        o = EliminationOrdering.of(order)
        t = decomposition_from_ordering(g, o)
        assert validate(t, g).valid
        assert width(t) == width_of_ordering(g, o)

    def test_disconnected_graph_decomposes_into_a_tree(self):
        g = Graph.from_edges(range(1, 7), [(1, 2), (3, 4), (5, 6)])
        t = decomposition_from_ordering(g, greedy_ordering(g))
        assert validate(t, g).valid

    @pytest.mark.parametrize("strategy", list(GreedyStrategy))
    def test_greedy_ordering_on_tree(self, strategy):
        g = families.random_tree(15, seed=2)
        assert width_of_ordering(g, greedy_ordering(g, strategy)) == 1

    def test_greedy_treewidth_is_an_upper_bound(self):
        g = families.grid(4, 4)
        bound, t = greedy_treewidth(g)
        assert validate(t, g).valid
        assert bound == width(t) >= 4

    @pytest.mark.parametrize(
        "g, largest_clique",
        [(families.worked_example(), 3), (families.complete(6), 6), (families.random_tree(10, seed=1), 2)],
    )
    def test_min_fill_on_chordal_graphs(self, g, largest_clique):
        order = greedy_ordering(g, GreedyStrategy.MIN_FILL)
        assert width_of_ordering(g, order) == largest_clique - 1

    def test_min_degree_tie_break(self):
        assert greedy_ordering(families.path(4)).order == (1, 2, 3, 4)


class TestExactTreewidth:
    @pytest.mark.parametrize(
        "g, expected",
        [
            (families.path(10), 1),
            (families.cycle(12), 2),
            (families.complete(7), 6),
            (families.edgeless(5), 0),
            (families.worked_example(), 2),
            (families.complete(1), 0),
            (Graph.empty(), -1),
        ],
    )
    def test_known_values(self, g, expected):
        tw, t = exact_treewidth(g)
        assert tw == expected
        assert width(t) == expected
        assert validate(t, g).valid

    @pytest.mark.parametrize("n", range(3, 13))
    def test_closed_forms(self, n):
        assert exact_treewidth(families.random_tree(n, seed=n))[0] == 1
        assert exact_treewidth(families.cycle(n))[0] == 2
        assert exact_treewidth(families.complete(n))[0] == n - 1
        assert exact_treewidth(families.edgeless(n))[0] == 0

    @pytest.mark.slow
    def test_grid(self):
        assert exact_treewidth(families.grid(4, 4), limit=16)[0] == 4

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            exact_treewidth(families.path(16))
        with pytest.raises(SizeLimitError):
            exact_treewidth(families.path(5), limit=4)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(0, 6))
    def test_every_small_graph_against_all_orderings(self, n):
        for g in _all_graphs(n):
            assert exact_treewidth(g)[0] == _min_over_orderings(g), sorted(g.edges)

    @pytest.mark.slow
    def test_every_six_vertex_graph_up_to_isomorphism(self):
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 6]
        assert len(atlas) == 156
        for h in atlas:
            g = Graph.from_networkx(nx.convert_node_labels_to_integers(h, first_label=1))
            assert exact_treewidth(g)[0] == _min_over_orderings(g), sorted(g.edges)

    @pytest.mark.slow
    def test_random_graphs_up_to_eight_vertices(self):
        rng = random.Random(0)
        for _ in range(500):
            n = rng.randint(1, 8)
            g = families.random_gnp(n, rng.uniform(0.2, 0.8), seed=rng.randrange(2**31))
            tw, t = exact_treewidth(g)
            assert tw == _brute_force_treewidth(g), sorted(g.edges)
            assert validate(t, g).valid

    @pytest.mark.parametrize("seed", range(5))
    def test_monotone_under_induced_subgraphs(self, seed):
        rng = random.Random(seed)
        for _ in range(30):
            n = rng.randint(1, 11)
            g = families.random_gnp(n, rng.uniform(0.2, 0.7), seed=rng.randrange(2**31))
            kept = rng.sample(sorted(g.vertices), rng.randint(0, n))
            assert exact_treewidth(induced_subgraph(g, kept))[0] <= exact_treewidth(g)[0]

    @pytest.mark.parametrize("seed", range(5))
    def test_no_decomposition_is_narrower(self, seed):
        rng = random.Random(seed)
        for _ in range(30):
            n = rng.randint(1, 11)
            g = families.random_gnp(n, rng.uniform(0.2, 0.7), seed=rng.randrange(2**31))
            order = sorted(g.vertices)
            rng.shuffle(order)
            t = decomposition_from_ordering(g, EliminationOrdering.of(order))
            assert validate(t, g).valid
            assert width(t) >= exact_treewidth(g)[0]
