"""PACE-style .gr / .td files and the CSP constraints file.

.gr:  ``c`` comments, a ``p tw <n> <m>`` header, then ``<u> <v>`` edge lines.
.td:  ``c`` comments, a ``s td <bags> <max_bag_size> <n>`` header, ``b <id> <v...>``
      bag lines, then ``<id> <id>`` tree-edge lines. Bag ids are 1-based.
csp:  ``c`` comments, ``d <domain_size>``, then ``t <u> <v> <bits>`` tables
      (row-major, row = value of u) and/or ``alldiff`` for the remaining edges.
"""

from pathlib import Path

import numpy as np
from loguru import logger

from src.csp import CspInstance
from src.decomposition import TreeDecomposition, width
from src.errors import FormatError, SelfLoopError
from src.graph import Graph, normalize_edge


def _lines(text: bytes | str) -> list[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"Input is not UTF-8 text: {e.reason} at byte {e.start}") from None
    numbered = []
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens and tokens[0] != "c":
            numbered.append((number, tokens))
    return numbered


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"Line {number}: expected an integer, got {token!r}") from None


def parse_graph(text: bytes | str) -> Graph:
    lines = _lines(text)
    if not lines or lines[0][1][:2] != ["p", "tw"] or len(lines[0][1]) != 4:
        raise FormatError("Missing or malformed 'p tw <n> <m>' header")
    number, header = lines[0]
    n, m = _int(header[2], number), _int(header[3], number)
    if n < 0 or m < 0:
        raise FormatError(f"Line {number}: negative vertex or edge count")

    edges = []
    for number, tokens in lines[1:]:
        if len(tokens) != 2:
            raise FormatError(f"Line {number}: expected 2 tokens, got {len(tokens)}")
        u, v = _int(tokens[0], number), _int(tokens[1], number)
        for x in (u, v):
            if not 1 <= x <= n:
                raise FormatError(f"Line {number}: vertex {x} outside 1..{n}")
        if u == v:
            raise SelfLoopError(f"Line {number}: self-loop on vertex {u}")
        edges.append((u, v))
    if len(edges) != m:
        logger.warning(f"Header announces {m} edges, found {len(edges)} edge lines")
    return Graph.from_edges(range(1, n + 1), edges)


def write_graph(g: Graph) -> bytes:
    n = g.vertex_count
    if g.vertices != frozenset(range(1, n + 1)):
        raise FormatError("Only graphs labelled 1..n can be written as .gr")
    lines = [f"p tw {n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_td(text: bytes | str, vertex_count: int | None = None) -> TreeDecomposition:
    """Parse a .td file; ``vertex_count`` is checked against the header when given."""
    lines = _lines(text)
    if not lines or lines[0][1][:2] != ["s", "td"] or len(lines[0][1]) != 5:
        raise FormatError("Missing or malformed 's td <bags> <max_bag_size> <n>' header")
    number, header = lines[0]
    bag_count, _, n = (_int(token, number) for token in header[2:])
    if vertex_count is not None and n != vertex_count:
        raise FormatError(f"Decomposition is for {n} vertices, graph has {vertex_count}")

    bags: dict[int, frozenset[int]] = {}
    tree_edges = []
    for number, tokens in lines[1:]:
        if tokens[0] == "b":
            if len(tokens) < 2:
                raise FormatError(f"Line {number}: bag line without an id")
            bag_id = _int(tokens[1], number)
            if not 1 <= bag_id <= bag_count or bag_id in bags:
                raise FormatError(f"Line {number}: invalid or repeated bag id {bag_id}")
            members = frozenset(_int(t, number) for t in tokens[2:])
            if any(not 1 <= v <= n for v in members):
                raise FormatError(f"Line {number}: bag vertex outside 1..{n}")
            bags[bag_id] = members
        elif len(tokens) == 2:
            a, b = _int(tokens[0], number), _int(tokens[1], number)
            if not (1 <= a <= bag_count and 1 <= b <= bag_count):
                raise FormatError(f"Line {number}: tree edge names a missing bag")
            tree_edges.append((a - 1, b - 1))
        else:
            raise FormatError(f"Line {number}: unrecognized line")
    if len(bags) != bag_count:
        raise FormatError(f"Header announces {bag_count} bags, found {len(bags)}")
    return TreeDecomposition.build([bags[i] for i in range(1, bag_count + 1)], tree_edges)


def write_td(t: TreeDecomposition, vertex_count: int) -> bytes:
    lines = [f"s td {t.bag_count} {width(t) + 1} {vertex_count}"]
    for i, bag in enumerate(t.bags, start=1):
        lines.append(" ".join(["b", str(i), *map(str, sorted(bag))]))
    lines += [f"{a + 1} {b + 1}" for a, b in sorted(t.tree_edges)]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_constraints(text: bytes | str, graph: Graph) -> CspInstance:
    """Explicit ``t`` tables win over ``alldiff`` for the same edge."""
    lines = _lines(text)
    if not lines or lines[0][1][0] != "d" or len(lines[0][1]) != 2:
        raise FormatError("Missing or malformed 'd <domain_size>' line")
    number, header = lines[0]
    d = _int(header[1], number)
    if d < 1:
        raise FormatError(f"Line {number}: domain size must be positive")

    tables: dict[tuple[int, int], np.ndarray] = {}
    alldiff = False
    for number, tokens in lines[1:]:
        if tokens == ["alldiff"]:
            alldiff = True
            continue
        if tokens[0] != "t" or len(tokens) < 4:
            raise FormatError(f"Line {number}: expected 't <u> <v> <bits>' or 'alldiff'")
        u, v = _int(tokens[1], number), _int(tokens[2], number)
        if u == v or u not in graph.vertices or not graph.has_edge(u, v):
            raise FormatError(f"Line {number}: ({u}, {v}) is not an edge of the graph")
        bits = "".join(tokens[3:])
        if len(bits) != d * d or set(bits) - {"0", "1"}:
            raise FormatError(f"Line {number}: expected {d * d} bits, got {bits!r}")
        edge = normalize_edge(u, v)
        if edge in tables:
            raise FormatError(f"Line {number}: second table for edge {edge}")
        table = np.array([b == "1" for b in bits], dtype=bool).reshape(d, d)
        tables[edge] = table if u < v else table.T

    if alldiff:
        different = ~np.eye(d, dtype=bool)
        for edge in graph.edges:
            tables.setdefault(edge, different)
    return CspInstance(graph=graph, domain_size=d, constraints=tables)


def write_constraints(inst: CspInstance) -> bytes:
    lines = [f"d {inst.domain_size}"]
    for (u, v), table in sorted(inst.constraints.items()):
        bits = "".join("1" if x else "0" for x in table.flatten())
        lines.append(f"t {u} {v} {bits}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_bytes())


def read_td(path: str | Path, vertex_count: int | None = None) -> TreeDecomposition:
    return parse_td(Path(path).read_bytes(), vertex_count)


def read_constraints(path: str | Path, graph: Graph) -> CspInstance:
    return parse_constraints(Path(path).read_bytes(), graph)
