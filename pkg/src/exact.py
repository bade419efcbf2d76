"""Exact treewidth for small graphs.

Dynamic programming over sets of eliminated vertices: for an eliminated set
``S`` and a next vertex ``v``, the back-degree of ``v`` is the number of
vertices outside ``S + v`` reachable from ``v`` through ``S``. States are
expanded layer by layer and pruned against the greedy upper bound.
"""

from loguru import logger

from src.decomposition import TreeDecomposition
from src.elimination import (
    EliminationOrdering,
    decomposition_from_ordering,
    greedy_ordering,
    GreedyStrategy,
    width_of_ordering,
)
from src.errors import SizeLimitError
from src.graph import Graph
from src.settings import settings


def _back_degree(adjacency: list[int], eliminated: int, v: int) -> int:
    seen = 1 << v
    stack = [v]
    reach = 0
    while stack:
        u = stack.pop()
        nbrs = adjacency[u]
        reach |= nbrs & ~eliminated
        inner = nbrs & eliminated & ~seen
        seen |= inner
        while inner:
            low = inner & -inner
            stack.append(low.bit_length() - 1)
            inner ^= low
    return (reach & ~(1 << v)).bit_count()


def _greedy_upper_bound(g: Graph) -> tuple[int, EliminationOrdering]:
    candidates = [greedy_ordering(g, strategy) for strategy in GreedyStrategy]
    return min(
        ((width_of_ordering(g, o), o) for o in candidates), key=lambda pair: pair[0]
    )


def exact_treewidth(
    g: Graph, limit: int | None = None
) -> tuple[int, TreeDecomposition]:
    """Treewidth of ``g`` and a decomposition of exactly that width."""
    limit = settings.treewidth.tw_exact_limit if limit is None else limit
    if g.vertex_count > limit:
        raise SizeLimitError(
            f"Exact treewidth is limited to {limit} vertices, got {g.vertex_count}"
        )
    if not g.vertices:
        return -1, TreeDecomposition.empty()

    labels = sorted(g.vertices)
    index = {v: i for i, v in enumerate(labels)}
    adjacency = [0] * len(labels)
    for u, v in g.edges:
        adjacency[index[u]] |= 1 << index[v]
        adjacency[index[v]] |= 1 << index[u]

    upper, best_order = _greedy_upper_bound(g)
    full = (1 << len(labels)) - 1

    # state -> best value; parent maps a state to (previous state, last vertex)
    layer = {0: -1}
    parent: dict[int, tuple[int, int]] = {}
    for _ in range(len(labels)):
        next_layer: dict[int, int] = {}
        for eliminated, value in layer.items():
            remaining = full & ~eliminated
            while remaining:
                low = remaining & -remaining
                v = low.bit_length() - 1
                remaining ^= low
                candidate = max(value, _back_degree(adjacency, eliminated, v))
                if candidate >= upper:
                    continue
                state = eliminated | low
                if state not in next_layer or candidate < next_layer[state]:
                    next_layer[state] = candidate
                    parent[state] = (eliminated, v)
        layer = next_layer
        if not layer:
            break

    if full in layer:
        order = []
        state = full
        while state:
            state, v = parent[state]
            order.append(labels[v])
        best_order = EliminationOrdering.of(reversed(order))
        upper = layer[full]
    logger.debug(f"Exact treewidth {upper} on {g.vertex_count} vertices")
    return upper, decomposition_from_ordering(g, best_order)
