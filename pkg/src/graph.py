from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from src.errors import MembershipError, SelfLoopError

Vertex = int
Edge = tuple[int, int]
VertexSet = frozenset[int]


def normalize_edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph over integer labels.

    Edges are stored as ordered pairs ``(u, v)`` with ``u < v``. Instances are
    immutable and hashable, so they can be used as memoization keys.
    """

    vertices: VertexSet
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"Self-loop on vertex {u}")
            if u > v:
                raise ValueError(f"Edge ({u}, {v}) is not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise MembershipError(f"Edge ({u}, {v}) has an endpoint outside the graph")

    @classmethod
    def from_edges(
        cls, vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]]
    ) -> Graph:
        """Build a graph, normalizing edge orientation and collapsing duplicates."""
        normalized = set()
        for u, v in edges:
            if u == v:
                raise SelfLoopError(f"Self-loop on vertex {u}")
            normalized.add(normalize_edge(u, v))
        return cls(vertices=frozenset(vertices), edges=frozenset(normalized))

    @classmethod
    def empty(cls) -> Graph:
        return cls(vertices=frozenset(), edges=frozenset())

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> Graph:
        return cls.from_edges(nx_graph.nodes, nx_graph.edges)

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(sorted(self.vertices))
        nx_graph.add_edges_from(sorted(self.edges))
        return nx_graph

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[Vertex, frozenset[Vertex]]:
        neighbors: dict[Vertex, set[Vertex]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return {v: frozenset(n) for v, n in neighbors.items()}

    def neighbors(self, v: Vertex) -> frozenset[Vertex]:
        return self.adjacency[v]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return normalize_edge(u, v) in self.edges

    def is_clique(self) -> bool:
        n = self.vertex_count
        return self.edge_count == n * (n - 1) // 2

    def with_edges(self, extra: Iterable[tuple[Vertex, Vertex]]) -> Graph:
        return Graph.from_edges(self.vertices, list(self.edges) + list(extra))


def check_membership(g: Graph, x: Iterable[Vertex]) -> VertexSet:
    """Return ``x`` as a frozenset, raising MembershipError on foreign labels."""
    members = frozenset(x)
    unknown = members - g.vertices
    if unknown:
        raise MembershipError(f"Vertices {sorted(unknown)} are not in the graph")
    return members


def induced_subgraph(g: Graph, x: Iterable[Vertex]) -> Graph:
    members = check_membership(g, x)
    return Graph(
        vertices=members,
        edges=frozenset(e for e in g.edges if e[0] in members and e[1] in members),
    )


def remove_vertices(g: Graph, s: Iterable[Vertex]) -> Graph:
    removed = check_membership(g, s)
    return induced_subgraph(g, g.vertices - removed)


def connected_components(g: Graph) -> list[VertexSet]:
    """Maximal connected vertex sets, ordered by their smallest label."""
    components = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(components, key=min)
