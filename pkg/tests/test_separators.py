import random

import pytest

from src.bounds import ExactEvaluator, separator_as_components_bound
from src.errors import (
    AdjacentPairError,
    InvalidParameterError,
    MembershipError,
    NoSeparatorError,
)
from src.graph import Graph
from src.separators import (
    CandidateSource,
    enumerate_candidates,
    min_vertex_cut,
    score,
    separates,
    user_candidate,
)
from src.utils import families
from tests.conftest import SEPARATOR, SMALLER_SEPARATOR


class TestMinVertexCut:
    def test_worked_example_prefers_cut_near_source(self, fig1):
        assert min_vertex_cut(fig1, 1, 6) == frozenset({3})

    def test_path(self):
        assert min_vertex_cut(families.path(3), 1, 3) == frozenset({2})

    def test_three_disjoint_paths(self):
        g = Graph.from_edges(range(1, 6), [(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)])
        assert min_vertex_cut(g, 1, 5) == frozenset({2, 3, 4})

    def test_disconnected_pair(self):
        g = Graph.from_edges(range(1, 5), [(1, 2), (3, 4)])
        assert min_vertex_cut(g, 1, 4) == frozenset()

    @pytest.mark.parametrize("a, b", [(1, 2), (3, 3)])
    def test_adjacent_or_identical(self, fig1, a, b):
        with pytest.raises(AdjacentPairError):
            min_vertex_cut(fig1, a, b)

    def test_foreign_vertex(self, fig1):
        with pytest.raises(MembershipError):
            min_vertex_cut(fig1, 1, 11)


class TestScore:
    def test_worked_example(self, fig1):
        assert score(fig1, SEPARATOR) == 2
        assert score(fig1, SMALLER_SEPARATOR) == 3

    def test_separates(self, fig1):
        assert separates(fig1, SEPARATOR)
        assert not separates(fig1, set())
        assert not separates(fig1, fig1.vertices - {1})

    def test_user_candidate(self, fig1):
        candidate = user_candidate(fig1, [3, 5, 8])
        assert candidate.source == CandidateSource.USER
        assert candidate.score == 3
        assert candidate.sort_key == (3, (3, 5, 8))

    @pytest.mark.parametrize("seed", range(5))
    def test_exact_score_is_the_components_bound(self, seed):
        rng = random.Random(seed)
        exact = ExactEvaluator()
        for _ in range(40):
            n = rng.randint(1, 10)
            g = families.random_gnp(n, rng.uniform(0.2, 0.7), seed=rng.randrange(2**31))
            s = rng.sample(sorted(g.vertices), rng.randint(0, n))
            expected = separator_as_components_bound(g, s, exact).components_bound
            assert score(g, s, exact) == expected
            assert expected >= exact(g)


class TestEnumerateCandidates:
    def test_worked_example_contains_both_separators(self, fig1):
        separators = {c.separator for c in enumerate_candidates(fig1, 50, seed=0)}
        assert SEPARATOR in separators
        assert SMALLER_SEPARATOR in separators

    def test_larger_separator_scores_better(self, fig1):
        candidates = enumerate_candidates(fig1, 50, seed=0)
        assert candidates[0].score == 2
        smaller = [c for c in candidates if c.separator == SMALLER_SEPARATOR]
        assert all(c.score == 3 for c in smaller)

    def test_sorted_and_distinct(self, fig1):
        candidates = enumerate_candidates(fig1, 50, seed=0)
        keys = [c.sort_key for c in candidates]
        assert keys == sorted(keys)
        assert len({c.separator for c in candidates}) == len(candidates)
        assert all(separates(fig1, c.separator) for c in candidates)

    def test_budget_truncates(self, fig1):
        assert len(enumerate_candidates(fig1, 3, seed=0)) == 3

    def test_deterministic_for_a_seed(self):
        g = families.grid(6, 6)
        first = enumerate_candidates(g, 20, seed=4, pair_sample_limit=10, pair_sample_size=25)
        second = enumerate_candidates(g, 20, seed=4, pair_sample_limit=10, pair_sample_size=25)
        assert first == second
        assert all(separates(g, c.separator) for c in first)

    def test_clique(self):
        with pytest.raises(NoSeparatorError):
            enumerate_candidates(families.complete(5))

    def test_star(self):
        candidates = enumerate_candidates(families.star(4))
        assert frozenset({1}) in {c.separator for c in candidates}

    def test_disconnected_graph_offers_empty_separator(self):
        g = Graph.from_edges(range(1, 7), [(1, 2), (2, 3), (4, 5), (5, 6)])
        candidates = enumerate_candidates(g)
        empty = next(c for c in candidates if c.separator == frozenset())
        assert empty.score == 1

    def test_invalid_budget(self, fig1):
        with pytest.raises(InvalidParameterError):
            enumerate_candidates(fig1, 0)
