"""Separator bounds on treewidth and the decomposition combiner.

For a vertex set ``S`` the components ``G_1..G_t`` of ``G - S`` each attach to
``S_i``, the part of ``S`` adjacent to them. Filling in every ``S_i`` as a
clique gives ``H_S``; decompositions of ``H_S`` and of each ``G_i`` then
combine into a decomposition of ``G`` of width
``max(tw(H_S), max_i(|S_i| + tw(G_i)))``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Protocol

from loguru import logger
from pydantic import BaseModel

from src.decomposition import TreeDecomposition, find_cluster_containing, width
from src.elimination import greedy_treewidth
from src.errors import AlignmentError, BudgetExceeded, NoSeparatorError
from src.exact import exact_treewidth
from src.graph import (
    Edge,
    Graph,
    Vertex,
    VertexSet,
    check_membership,
    connected_components,
    induced_subgraph,
    normalize_edge,
    remove_vertices,
)
from src.settings import settings


class SubMethod(str, Enum):
    EXACT = "exact"
    BOUNDED = "bounded"


class TreewidthEvaluator(Protocol):
    method: SubMethod

    def __call__(self, g: Graph) -> int: ...


@lru_cache(maxsize=65536)
def _exact_width(g: Graph, limit: int) -> int:
    return exact_treewidth(g, limit=limit)[0]


@lru_cache(maxsize=65536)
def _greedy_width(g: Graph) -> int:
    return greedy_treewidth(g)[0]


class ExactEvaluator:
    method = SubMethod.EXACT

    def __init__(self, limit: int | None = None) -> None:
        self.limit = settings.treewidth.tw_exact_limit if limit is None else limit

    def __call__(self, g: Graph) -> int:
        return _exact_width(g, self.limit)


class GreedyEvaluator:
    method = SubMethod.BOUNDED

    def __call__(self, g: Graph) -> int:
        return _greedy_width(g)


class CheapEvaluator:
    """Exact on pieces up to ``threshold`` vertices, greedy above."""

    method = SubMethod.BOUNDED

    def __init__(self, threshold: int | None = None) -> None:
        self.threshold = (
            settings.treewidth.tw_exact_threshold if threshold is None else threshold
        )

    def __call__(self, g: Graph) -> int:
        if g.vertex_count <= self.threshold:
            return _exact_width(g, max(self.threshold, settings.treewidth.tw_exact_limit))
        return _greedy_width(g)


def _method_of(tw_fn: Callable[[Graph], int]) -> SubMethod:
    return getattr(tw_fn, "method", SubMethod.BOUNDED)


@dataclass(frozen=True)
class FillInResult:
    separator: VertexSet
    components: tuple[VertexSet, ...]
    attachment_sets: tuple[VertexSet, ...]
    fill_edges: frozenset[Edge]
    augmented_separator_graph: Graph
    graph: Graph

    @property
    def augmented_graph(self) -> Graph:
        """H = (V, E + F)."""
        return self.graph.with_edges(self.fill_edges)


def attachment_sets(
    g: Graph, s: Iterable[Vertex]
) -> tuple[list[VertexSet], list[VertexSet]]:
    separator = check_membership(g, s)
    components = connected_components(remove_vertices(g, separator))
    attachments = [
        frozenset(x for x in separator if g.neighbors(x) & component)
        for component in components
    ]
    return components, attachments


def fill_in(g: Graph, s: Iterable[Vertex]) -> FillInResult:
    separator = check_membership(g, s)
    components, attachments = attachment_sets(g, separator)
    fill = frozenset(
        normalize_edge(u, v)
        for attachment in attachments
        for u, v in combinations(sorted(attachment), 2)
        if not g.has_edge(u, v)
    )
    h_s = induced_subgraph(g, separator).with_edges(fill)
    logger.debug(
        f"Fill-in of |S|={len(separator)}: {len(components)} components, "
        f"{len(fill)} fill edges"
    )
    return FillInResult(
        separator=separator,
        components=tuple(components),
        attachment_sets=tuple(attachments),
        fill_edges=fill,
        augmented_separator_graph=h_s,
        graph=g,
    )


def fill_in_edges(g: Graph, s: Iterable[Vertex]) -> frozenset[Edge]:
    return fill_in(g, s).fill_edges


def build_augmented_separator_graph(g: Graph, s: Iterable[Vertex]) -> Graph:
    """H_S: the subgraph induced by ``s`` with every attachment set made a clique."""
    return fill_in(g, s).augmented_separator_graph


class ComponentTerm(BaseModel):
    index: int
    vertices: list[int]
    attachment: list[int]
    attachment_size: int
    treewidth: int


class BoundReport(BaseModel):
    separator: list[int]
    clique_bound: int
    components_bound: int
    corollary_bound: int
    tw_hs: int
    fill_edges: list[tuple[int, int]]
    per_component: list[ComponentTerm]
    sub_method: SubMethod


def _component_widths(
    g: Graph, components: Sequence[VertexSet], tw_fn: Callable[[Graph], int]
) -> list[int]:
    return [tw_fn(induced_subgraph(g, component)) for component in components]


def separator_as_clique_bound(
    g: Graph, s: Iterable[Vertex], tw_fn: Callable[[Graph], int]
) -> int:
    """|S| + max_i tw(G_i), with -1 as the maximum over no components."""
    separator = check_membership(g, s)
    components = connected_components(remove_vertices(g, separator))
    return len(separator) + max(_component_widths(g, components, tw_fn), default=-1)


def separator_as_components_bound(
    g: Graph, s: Iterable[Vertex], tw_fn: Callable[[Graph], int]
) -> BoundReport:
    """All three bounds for ``(g, s)`` from a single fill-in pass."""
    fill = fill_in(g, s)
    tw_hs = tw_fn(fill.augmented_separator_graph)
    widths = _component_widths(g, fill.components, tw_fn)
    max_component = max(widths, default=-1)
    terms = [
        len(attachment) + tw for attachment, tw in zip(fill.attachment_sets, widths)
    ]
    return BoundReport(
        separator=sorted(fill.separator),
        clique_bound=len(fill.separator) + max_component,
        components_bound=max([tw_hs, *terms]),
        corollary_bound=tw_hs + max_component + 1,
        tw_hs=tw_hs,
        fill_edges=sorted(fill.fill_edges),
        per_component=[
            ComponentTerm(
                index=i,
                vertices=sorted(component),
                attachment=sorted(attachment),
                attachment_size=len(attachment),
                treewidth=tw,
            )
            for i, (component, attachment, tw) in enumerate(
                zip(fill.components, fill.attachment_sets, widths)
            )
        ],
        sub_method=_method_of(tw_fn),
    )


def corollary_bound(
    g: Graph, s: Iterable[Vertex], tw_fn: Callable[[Graph], int]
) -> int:
    """tw(H_S) + tw(G - S) + 1."""
    separator = check_membership(g, s)
    fill = fill_in(g, separator)
    return tw_fn(fill.augmented_separator_graph) + tw_fn(remove_vertices(g, separator)) + 1


def combine_decompositions(
    t_s: TreeDecomposition,
    component_decomps: Sequence[TreeDecomposition],
    fill: FillInResult,
) -> TreeDecomposition:
    """Decomposition of G (and of H) from one of H_S and one per component.

    Every bag of component ``i`` gains ``S_i``, and the component's first bag
    is linked to the first bag of ``t_s`` containing ``S_i``. Without bags in
    ``t_s`` the components are chained through their first bags.
    """
    if len(component_decomps) != len(fill.components):
        raise AlignmentError(
            f"{len(component_decomps)} component decompositions for "
            f"{len(fill.components)} components"
        )

    bags = list(t_s.bags)
    tree_edges = list(t_s.tree_edges)
    previous_root = None
    for decomposition, attachment in zip(component_decomps, fill.attachment_sets):
        if decomposition.bag_count == 0:
            raise AlignmentError("Component decomposition has no bags")
        offset = len(bags)
        bags.extend(bag | attachment for bag in decomposition.bags)
        tree_edges.extend((a + offset, b + offset) for a, b in decomposition.tree_edges)
        if t_s.bag_count or attachment:
            tree_edges.append((offset, find_cluster_containing(t_s, attachment)))
        elif previous_root is not None:
            tree_edges.append((offset, previous_root))
        previous_root = offset
    return TreeDecomposition.build(bags, tree_edges)


class RecursionConfig(BaseModel):
    exact_threshold: int = 12
    exact_limit: int = 15
    search_budget: int = 50
    seed: int = 0
    max_calls: int = 10_000
    compare_with_greedy: bool = True

    @classmethod
    def from_settings(cls, **overrides) -> RecursionConfig:
        tw = settings.treewidth
        values = {
            "exact_threshold": tw.tw_exact_threshold,
            "exact_limit": tw.tw_exact_limit,
            "search_budget": tw.tw_search_budget,
            "seed": tw.tw_seed,
            "max_calls": tw.tw_max_recursion_calls,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class _Recursion:
    def __init__(self, config: RecursionConfig) -> None:
        self.config = config
        self.calls = 0
        if config.exact_threshold > config.exact_limit:
            logger.warning(
                f"Exact limit raised from {config.exact_limit} to the threshold "
                f"{config.exact_threshold}"
            )

    def decompose(self, g: Graph, depth: int = 0) -> TreeDecomposition:
        self.calls += 1
        if self.calls > self.config.max_calls:
            raise BudgetExceeded(f"More than {self.config.max_calls} recursive calls")

        if g.vertex_count <= self.config.exact_threshold:
            limit = max(self.config.exact_limit, self.config.exact_threshold)
            return exact_treewidth(g, limit=limit)[1]

        components = connected_components(g)
        if len(components) > 1:
            fill = fill_in(g, ())
            return combine_decompositions(
                TreeDecomposition.empty(),
                [self.decompose(induced_subgraph(g, c), depth + 1) for c in components],
                fill,
            )

        # Local import: separator search scores candidates with this module.
        from src.separators import enumerate_candidates

        try:
            candidates = enumerate_candidates(
                g,
                self.config.search_budget,
                seed=self.config.seed,
                evaluator=CheapEvaluator(self.config.exact_threshold),
            )
        except NoSeparatorError:
            return TreeDecomposition.trivial(g)

        best = candidates[0]
        logger.debug(
            f"Depth {depth}: separator {sorted(best.separator)} "
            f"({best.source.value}, score {best.score}) on {g.vertex_count} vertices"
        )
        fill = fill_in(g, best.separator)
        t_s = self.decompose(fill.augmented_separator_graph, depth + 1)
        parts = [
            self.decompose(induced_subgraph(g, component), depth + 1)
            for component in fill.components
        ]
        combined = combine_decompositions(t_s, parts, fill)

        if self.config.compare_with_greedy:
            greedy_width, greedy = greedy_treewidth(g)
            if greedy_width < width(combined):
                return greedy
        return combined


def recursive_bound(
    g: Graph, config: RecursionConfig | None = None
) -> tuple[int, TreeDecomposition]:
    """Upper bound on tw(g) with a decomposition realizing it.

    Small graphs are solved exactly; larger ones are split at the best-scoring
    separator, with ``H_S`` and each component handled recursively. When the
    call budget runs out the single-bag decomposition is returned.
    """
    config = config or RecursionConfig.from_settings()
    recursion = _Recursion(config)
    try:
        decomposition = recursion.decompose(g)
    except BudgetExceeded as e:
        logger.warning(f"{e}; falling back to the single-bag decomposition")
        decomposition = TreeDecomposition.trivial(g)
    logger.info(
        f"Recursive bound {width(decomposition)} on {g.vertex_count} vertices "
        f"after {recursion.calls} calls"
    )
    return width(decomposition), decomposition
