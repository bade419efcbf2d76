"""Candidate separators scored by the separator-as-components bound.

A separator that touches each remaining component through few vertices can
beat a smaller one, so candidates come from several generators (minimum
vertex cuts, BFS levels, open and closed neighborhoods) and are ranked by
score rather than by size.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable
from enum import Enum
from itertools import combinations

import networkx as nx
from loguru import logger
from networkx.algorithms.flow import edmonds_karp
from pydantic import BaseModel

from src.bounds import CheapEvaluator, separator_as_components_bound
from src.errors import AdjacentPairError, InvalidParameterError, NoSeparatorError
from src.graph import (
    Graph,
    Vertex,
    VertexSet,
    check_membership,
    connected_components,
    remove_vertices,
)
from src.settings import settings


class CandidateSource(str, Enum):
    VERTEX_CUT = "vertex-cut"
    BFS_LEVEL = "bfs-level"
    NEIGHBORHOOD = "neighborhood"
    USER = "user"


class SeparatorCandidate(BaseModel):
    separator: frozenset[int]
    score: int
    source: CandidateSource

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.score, tuple(sorted(self.separator))


def min_vertex_cut(g: Graph, a: Vertex, b: Vertex) -> VertexSet:
    """Minimum set of vertices whose removal disconnects ``a`` from ``b``.

    Each vertex ``v`` becomes an arc ``(v, in) -> (v, out)`` of capacity 1 and
    every edge two uncapacitated arcs; the cut is read off the source side of
    the residual network, which yields the cut closest to ``a``.
    """
    check_membership(g, (a, b))
    if a == b or g.has_edge(a, b):
        raise AdjacentPairError(f"No vertex cut separates {a} from {b}")

    flow_network = nx.DiGraph()
    for v in sorted(g.vertices):
        flow_network.add_edge((v, "in"), (v, "out"), capacity=1)
    for u, v in sorted(g.edges):
        flow_network.add_edge((u, "out"), (v, "in"))
        flow_network.add_edge((v, "out"), (u, "in"))

    _, (source_side, _) = nx.minimum_cut(
        flow_network, (a, "out"), (b, "in"), flow_func=edmonds_karp
    )
    return frozenset(
        v
        for v in g.vertices
        if v not in (a, b) and (v, "in") in source_side and (v, "out") not in source_side
    )


def separates(g: Graph, s: Iterable[Vertex]) -> bool:
    return len(connected_components(remove_vertices(g, s))) >= 2


def score(
    g: Graph, s: Iterable[Vertex], cheap_tw: Callable[[Graph], int] | None = None
) -> int:
    """The separator-as-components bound of ``s`` under ``cheap_tw``."""
    cheap_tw = cheap_tw or CheapEvaluator()
    return separator_as_components_bound(g, s, cheap_tw).components_bound


def user_candidate(
    g: Graph, s: Iterable[Vertex], cheap_tw: Callable[[Graph], int] | None = None
) -> SeparatorCandidate:
    separator = check_membership(g, s)
    return SeparatorCandidate(
        separator=separator,
        score=score(g, separator, cheap_tw),
        source=CandidateSource.USER,
    )


def _sample_pairs(
    vertices: list[Vertex], rng: random.Random, limit: int, size: int
) -> list[tuple[Vertex, Vertex]]:
    pairs = list(combinations(vertices, 2))
    if len(vertices) <= limit or len(pairs) <= size:
        return pairs
    return sorted(rng.sample(pairs, size))


def _generate(
    g: Graph, rng: random.Random, pair_sample_limit: int, pair_sample_size: int
) -> Iterable[tuple[VertexSet, CandidateSource]]:
    vertices = sorted(g.vertices)
    if len(connected_components(g)) > 1:
        yield frozenset(), CandidateSource.VERTEX_CUT

    for a, b in _sample_pairs(vertices, rng, pair_sample_limit, pair_sample_size):
        if not g.has_edge(a, b):
            yield min_vertex_cut(g, a, b), CandidateSource.VERTEX_CUT

    nx_graph = g.to_networkx()
    roots = vertices
    if len(vertices) > pair_sample_limit:
        roots = sorted(rng.sample(vertices, min(len(vertices), pair_sample_limit)))
    for root in roots:
        layers = list(nx.bfs_layers(nx_graph, root))
        for layer in layers[1:-1]:
            yield frozenset(layer), CandidateSource.BFS_LEVEL

    for v in vertices:
        yield g.neighbors(v), CandidateSource.NEIGHBORHOOD
        yield g.neighbors(v) | {v}, CandidateSource.NEIGHBORHOOD


def enumerate_candidates(
    g: Graph,
    budget: int | None = None,
    *,
    seed: int | None = None,
    evaluator: Callable[[Graph], int] | None = None,
    pair_sample_limit: int | None = None,
    pair_sample_size: int | None = None,
) -> list[SeparatorCandidate]:
    """Distinct separating candidates, best score first, at most ``budget``.

    Ties are broken by the sorted separator, so the result is deterministic
    for a fixed seed.
    """
    tw = settings.treewidth
    budget = tw.tw_search_budget if budget is None else budget
    if budget < 1:
        raise InvalidParameterError(f"Candidate budget must be positive, got {budget}")
    if g.is_clique():
        raise NoSeparatorError(f"A clique on {g.vertex_count} vertices has no separator")

    rng = random.Random(tw.tw_seed if seed is None else seed)
    evaluator = evaluator or CheapEvaluator()
    seen: set[VertexSet] = set()
    candidates = []
    for separator, source in _generate(
        g,
        rng,
        tw.tw_pair_sample_limit if pair_sample_limit is None else pair_sample_limit,
        tw.tw_pair_sample_size if pair_sample_size is None else pair_sample_size,
    ):
        if separator in seen:
            continue
        seen.add(separator)
        if not separates(g, separator):
            continue
        candidates.append(
            SeparatorCandidate(
                separator=separator,
                score=score(g, separator, evaluator),
                source=source,
            )
        )

    if not candidates:
        raise NoSeparatorError("No candidate separates the graph")
    candidates.sort(key=lambda c: c.sort_key)
    logger.debug(
        f"{len(candidates)} separating candidates on {g.vertex_count} vertices, "
        f"best score {candidates[0].score}"
    )
    return candidates[:budget]
