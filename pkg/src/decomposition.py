from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import networkx as nx
from pydantic import BaseModel

from src.errors import NotFoundError
from src.graph import Graph, Vertex, VertexSet


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of vertex-set bags; bag indices are positions in ``bags``."""

    bags: tuple[VertexSet, ...]
    tree_edges: frozenset[tuple[int, int]]

    @classmethod
    def build(
        cls,
        bags: Sequence[Iterable[Vertex]],
        tree_edges: Iterable[tuple[int, int]] = (),
    ) -> TreeDecomposition:
        return cls(
            bags=tuple(frozenset(b) for b in bags),
            tree_edges=frozenset((min(a, b), max(a, b)) for a, b in tree_edges),
        )

    @classmethod
    def empty(cls) -> TreeDecomposition:
        return cls(bags=(), tree_edges=frozenset())

    @classmethod
    def trivial(cls, g: Graph) -> TreeDecomposition:
        """The single-bag decomposition (empty for the empty graph)."""
        if not g.vertices:
            return cls.empty()
        return cls.build([g.vertices])

    @property
    def bag_count(self) -> int:
        return len(self.bags)

    def to_networkx(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(range(self.bag_count))
        tree.add_edges_from(sorted(self.tree_edges))
        return tree


def width(t: TreeDecomposition) -> int:
    return max((len(b) for b in t.bags), default=0) - 1


class ViolationKind(str, Enum):
    TREE_SHAPE = "tree-shape"
    FOREIGN_VERTEX = "foreign-vertex"
    VERTEX_UNCOVERED = "vertex-uncovered"
    EDGE_UNCOVERED = "edge-uncovered"
    DISCONNECTED_OCCURRENCE = "disconnected-occurrence"


class Violation(BaseModel):
    kind: ViolationKind
    witness: list[int]
    message: str


class ValidationVerdict(BaseModel):
    violations: list[Violation] = []

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}


def _tree_shape_violations(t: TreeDecomposition, g: Graph) -> list[Violation]:
    violations = []
    if t.bag_count == 0:
        if g.vertices:
            violations.append(
                Violation(
                    kind=ViolationKind.TREE_SHAPE,
                    witness=[],
                    message="Empty decomposition of a non-empty graph",
                )
            )
        return violations

    for a, b in sorted(t.tree_edges):
        if a == b or not (0 <= a < t.bag_count and 0 <= b < t.bag_count):
            violations.append(
                Violation(
                    kind=ViolationKind.TREE_SHAPE,
                    witness=[a, b],
                    message=f"Tree edge ({a}, {b}) is a loop or names a missing bag",
                )
            )
    if violations:
        return violations

    if not nx.is_tree(t.to_networkx()):
        violations.append(
            Violation(
                kind=ViolationKind.TREE_SHAPE,
                witness=[t.bag_count, len(t.tree_edges)],
                message=(
                    f"{t.bag_count} bags and {len(t.tree_edges)} tree edges "
                    "do not form a tree"
                ),
            )
        )
    return violations


def validate(t: TreeDecomposition, g: Graph) -> ValidationVerdict:
    """Check the tree shape and the three decomposition conditions.

    Every violated condition is listed with a witness: the uncovered vertex,
    the uncovered edge, or the vertex whose occurrences are disconnected.
    """
    violations = _tree_shape_violations(t, g)

    covered = frozenset().union(*t.bags)
    for v in sorted(covered - g.vertices):
        violations.append(
            Violation(
                kind=ViolationKind.FOREIGN_VERTEX,
                witness=[v],
                message=f"Vertex {v} appears in a bag but not in the graph",
            )
        )
    for v in sorted(g.vertices - covered):
        violations.append(
            Violation(
                kind=ViolationKind.VERTEX_UNCOVERED,
                witness=[v],
                message=f"Vertex {v} is in no bag",
            )
        )
    for u, v in sorted(g.edges):
        if not any(u in bag and v in bag for bag in t.bags):
            violations.append(
                Violation(
                    kind=ViolationKind.EDGE_UNCOVERED,
                    witness=[u, v],
                    message=f"Edge ({u}, {v}) is covered by no bag",
                )
            )

    if any(v.kind == ViolationKind.TREE_SHAPE for v in violations):
        return ValidationVerdict(violations=violations)

    tree = t.to_networkx()
    for v in sorted(covered & g.vertices):
        nodes = [i for i, bag in enumerate(t.bags) if v in bag]
        if not nx.is_connected(tree.subgraph(nodes)):
            violations.append(
                Violation(
                    kind=ViolationKind.DISCONNECTED_OCCURRENCE,
                    witness=[v],
                    message=f"Bags containing vertex {v} do not form a subtree",
                )
            )
    return ValidationVerdict(violations=violations)


def find_cluster_containing(t: TreeDecomposition, c: Iterable[Vertex]) -> int:
    """Smallest bag index whose bag contains every vertex of ``c``.

    A clique of a decomposed graph always fits in some bag (Helly property of
    subtrees), so a miss means ``c`` was not a clique or ``t`` is invalid.
    """
    members = frozenset(c)
    for index, bag in enumerate(t.bags):
        if members <= bag:
            return index
    raise NotFoundError(f"No bag contains {sorted(members)}")
