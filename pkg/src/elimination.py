from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from loguru import logger

from src.decomposition import TreeDecomposition, width
from src.errors import PermutationError
from src.graph import Graph, Vertex


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple[Vertex, ...]

    @classmethod
    def of(cls, order: Sequence[Vertex]) -> EliminationOrdering:
        return cls(order=tuple(order))

    def check(self, g: Graph) -> None:
        if len(self.order) != g.vertex_count or set(self.order) != g.vertices:
            raise PermutationError(
                f"Ordering of length {len(self.order)} is not a permutation "
                f"of the {g.vertex_count} graph vertices"
            )


class GreedyStrategy(str, Enum):
    MIN_DEGREE = "min-degree"
    MIN_FILL = "min-fill"


def _eliminate(g: Graph, order: Sequence[Vertex]) -> list[frozenset[Vertex]]:
    """Later-neighbor sets produced by eliminating ``order`` on a copy of ``g``."""
    position = {v: i for i, v in enumerate(order)}
    neighbors = {v: set(n) for v, n in g.adjacency.items()}
    later_sets = []
    for i, v in enumerate(order):
        later = {w for w in neighbors[v] if position[w] > i}
        for w in later:
            neighbors[w] |= later - {w}
        later_sets.append(frozenset(later))
    return later_sets


def width_of_ordering(g: Graph, o: EliminationOrdering) -> int:
    """Maximum back-degree met while eliminating ``o`` (-1 for the empty graph)."""
    o.check(g)
    return max((len(later) for later in _eliminate(g, o.order)), default=-1)


def decomposition_from_ordering(g: Graph, o: EliminationOrdering) -> TreeDecomposition:
    """Bag i holds the i-th eliminated vertex and its later neighbors.

    Bag i hangs below the bag of its earliest-eliminated later neighbor; the
    roots of the resulting forest are chained to the last bag.
    """
    o.check(g)
    if not o.order:
        return TreeDecomposition.empty()

    position = {v: i for i, v in enumerate(o.order)}
    later_sets = _eliminate(g, o.order)
    last = len(o.order) - 1
    bags, tree_edges = [], []
    for i, (v, later) in enumerate(zip(o.order, later_sets)):
        bags.append(later | {v})
        if later:
            tree_edges.append((i, min(position[w] for w in later)))
        elif i != last:
            tree_edges.append((i, last))
    return TreeDecomposition.build(bags, tree_edges)


def _fill_count(neighbors: dict[Vertex, set[Vertex]], v: Vertex) -> int:
    nbrs = sorted(neighbors[v])
    return sum(
        1
        for i, a in enumerate(nbrs)
        for b in nbrs[i + 1 :]
        if b not in neighbors[a]
    )


def greedy_ordering(
    g: Graph, strategy: GreedyStrategy = GreedyStrategy.MIN_DEGREE
) -> EliminationOrdering:
    """Repeatedly eliminate the vertex of least degree (or least fill), ties by label."""
    neighbors = {v: set(n) for v, n in g.adjacency.items()}
    order = []
    while neighbors:
        if strategy == GreedyStrategy.MIN_DEGREE:
            v = min(neighbors, key=lambda u: (len(neighbors[u]), u))
        else:
            v = min(neighbors, key=lambda u: (_fill_count(neighbors, u), u))
        nbrs = neighbors.pop(v)
        for w in nbrs:
            neighbors[w] |= nbrs - {w}
            neighbors[w].discard(v)
        order.append(v)
    return EliminationOrdering.of(order)


def greedy_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    """The narrower of the min-degree and min-fill decompositions."""
    best = None
    for strategy in GreedyStrategy:
        decomposition = decomposition_from_ordering(g, greedy_ordering(g, strategy))
        if best is None or width(decomposition) < width(best):
            best = decomposition
    logger.debug(f"Greedy width {width(best)} on {g.vertex_count} vertices")
    return width(best), best
