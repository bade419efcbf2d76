"""Binary CSP solving by plain backtracking and by separator caching.

Both solvers explore the whole search space and count solutions, so their
counters measure the work the complexity claims are about. The separator
solver stores, for every tuple of values on an attachment set ``S_i``, the
number of ways component ``i`` extends it; the separator stage then
multiplies cached counts instead of searching the components again.
Components with the same attachment set share one cache; when they all attach
to the whole separator, the stage conditions on its values and stores nothing.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np
from loguru import logger
from pydantic import BaseModel

from src.bounds import fill_in
from src.elimination import EliminationOrdering
from src.errors import CspInstanceError, DegenerateDataError, NoSeparatorError
from src.graph import Edge, Graph, Vertex, VertexSet, check_membership, normalize_edge
from src.separators import enumerate_candidates, user_candidate
from src.settings import settings
from src.utils.families import random_gnp


@dataclass(frozen=True, eq=False)
class CspInstance:
    """Variables are graph vertices; ``constraints[(u, v)][a, b]`` allows u=a, v=b (u < v)."""

    graph: Graph
    domain_size: int
    constraints: Mapping[Edge, np.ndarray]

    def __post_init__(self) -> None:
        if self.domain_size < 1:
            raise CspInstanceError(f"Domain size must be positive, got {self.domain_size}")
        if set(self.constraints) != set(self.graph.edges):
            missing = sorted(set(self.graph.edges) - set(self.constraints))
            extra = sorted(set(self.constraints) - set(self.graph.edges))
            raise CspInstanceError(
                f"Constraint tables do not match edges (missing {missing}, extra {extra})"
            )
        shape = (self.domain_size, self.domain_size)
        for edge, table in self.constraints.items():
            if table.shape != shape or table.dtype != np.bool_:
                raise CspInstanceError(
                    f"Table for {edge} must be a boolean {shape} array, "
                    f"got {table.dtype} {table.shape}"
                )

    @classmethod
    def from_tables(
        cls,
        graph: Graph,
        domain_size: int,
        tables: Mapping[tuple[Vertex, Vertex], Sequence[Sequence[bool]] | np.ndarray],
    ) -> CspInstance:
        """Build an instance, transposing tables given as ``(v, u)`` with ``v > u``."""
        constraints = {}
        for (u, v), table in tables.items():
            array = np.asarray(table, dtype=bool)
            constraints[normalize_edge(u, v)] = array if u < v else array.T
        return cls(graph=graph, domain_size=domain_size, constraints=constraints)

    @classmethod
    def all_different(cls, graph: Graph, domain_size: int) -> CspInstance:
        table = ~np.eye(domain_size, dtype=bool)
        return cls(
            graph=graph,
            domain_size=domain_size,
            constraints={edge: table for edge in graph.edges},
        )

    @property
    def variables(self) -> VertexSet:
        return self.graph.vertices


def random_instance(
    graph: Graph, domain_size: int, density: float, rng: np.random.Generator
) -> CspInstance:
    """Tables whose pairs are allowed independently with probability ``density``."""
    return CspInstance(
        graph=graph,
        domain_size=domain_size,
        constraints={
            edge: rng.random((domain_size, domain_size)) < density
            for edge in sorted(graph.edges)
        },
    )


def check_witness(inst: CspInstance, assignment: Mapping[Vertex, int]) -> bool:
    if set(assignment) != set(inst.variables):
        return False
    if any(not 0 <= a < inst.domain_size for a in assignment.values()):
        return False
    return all(
        bool(table[assignment[u], assignment[v]])
        for (u, v), table in inst.constraints.items()
    )


class CacheRecord(BaseModel):
    scope: list[int]
    entries: int


class SolveStats(BaseModel):
    node_expansions: int = 0
    cache_entries: int = 0
    cache_lookups: int = 0
    satisfiable: bool = False
    solution_count: int = 0
    witness: dict[int, int] | None = None
    cache_builds: int = 0
    caches: list[CacheRecord] = []

    @property
    def operations(self) -> int:
        return self.node_expansions + self.cache_lookups


@dataclass(frozen=True)
class _Factor:
    scope: tuple[Vertex, ...]
    weight: Callable[[tuple[int, ...]], int]


@dataclass
class _Counters:
    node_expansions: int = 0
    cache_lookups: int = 0
    live_entries: int = 0
    peak_entries: int = 0
    cache_builds: int = 0
    caches: dict[tuple[Vertex, ...], CacheRecord] = field(default_factory=dict)


def _table_factor(edge: Edge, table: np.ndarray) -> _Factor:
    return _Factor(scope=edge, weight=lambda values: int(table[values[0], values[1]]))


class _Solver:
    def __init__(
        self,
        domain_size: int,
        recurse: bool,
        threshold: int,
        budget: int,
        seed: int,
    ) -> None:
        self.domain_size = domain_size
        self.recurse = recurse
        self.threshold = threshold
        self.budget = budget
        self.seed = seed
        self.counters = _Counters()
        self._separators: dict[tuple[VertexSet, frozenset], VertexSet | None] = {}

    def stats(self, count: int, witness: dict[Vertex, int] | None) -> SolveStats:
        return SolveStats(
            node_expansions=self.counters.node_expansions,
            cache_entries=self.counters.peak_entries,
            cache_lookups=self.counters.cache_lookups,
            satisfiable=count > 0,
            solution_count=count,
            witness=dict(sorted(witness.items())) if count > 0 else None,
            cache_builds=self.counters.cache_builds,
            caches=list(self.counters.caches.values()),
        )

    def plain(
        self,
        factors: Sequence[_Factor],
        order: Sequence[Vertex],
        fixed: Mapping[Vertex, int],
        want_witness: bool,
    ) -> tuple[int, dict[Vertex, int] | None]:
        """Chronological backtracking; a factor is checked once its last variable is set."""
        assignment = dict(fixed)
        position = {v: i for i, v in enumerate(order)}
        buckets: list[list[_Factor]] = [[] for _ in order]
        constant = 1
        for factor in factors:
            positions = [position[v] for v in factor.scope if v in position]
            if positions:
                buckets[max(positions)].append(factor)
            else:
                constant *= factor.weight(tuple(assignment[v] for v in factor.scope))
        if constant == 0:
            return 0, None

        count = 0
        witness = None

        def extend(depth: int, weight: int) -> None:
            nonlocal count, witness
            if depth == len(order):
                count += weight
                if want_witness and witness is None:
                    witness = {v: assignment[v] for v in order}
                return
            v = order[depth]
            for value in range(self.domain_size):
                self.counters.node_expansions += 1
                assignment[v] = value
                w = weight
                for factor in buckets[depth]:
                    w *= factor.weight(tuple(assignment[u] for u in factor.scope))
                    if not w:
                        break
                if w:
                    extend(depth + 1, w)
            del assignment[v]

        extend(0, constant)
        return count, witness

    def _primal(self, factors: Iterable[_Factor], variables: VertexSet) -> Graph:
        edges = set()
        for factor in factors:
            inside = sorted(v for v in factor.scope if v in variables)
            edges.update(combinations(inside, 2))
        return Graph.from_edges(variables, edges)

    def _choose_separator(
        self, factors: Sequence[_Factor], variables: VertexSet
    ) -> VertexSet | None:
        """Best separating candidate, or a single variable to condition on if it scores no worse."""
        primal = self._primal(factors, variables)
        key = (variables, primal.edges)
        if key in self._separators:
            return self._separators[key]
        try:
            pool = enumerate_candidates(primal, self.budget, seed=self.seed)
        except NoSeparatorError:
            self._separators[key] = None
            return None
        pool += [user_candidate(primal, {v}) for v in sorted(variables)]
        best = min(pool, key=lambda c: c.sort_key)
        logger.debug(
            f"Stage over {len(variables)} variables split at {sorted(best.separator)} "
            f"(score {best.score})"
        )
        self._separators[key] = best.separator
        return best.separator

    def _lookup(self, cache: dict[tuple[int, ...], int]) -> Callable[[tuple[int, ...]], int]:
        def weight(values: tuple[int, ...]) -> int:
            self.counters.cache_lookups += 1
            return cache[values]

        return weight

    def _extensions(
        self, parts: Sequence[tuple[VertexSet, list[_Factor]]], context: Mapping[Vertex, int]
    ) -> int:
        """Product of the extension counts of ``parts`` under ``context``."""
        total = 1
        for component, local in parts:
            total *= self.count(local, component, context, False)[0]
            if not total:
                break
        return total

    def _conditioned(
        self,
        parts: Sequence[tuple[VertexSet, list[_Factor]]],
        key_vars: tuple[Vertex, ...],
        fixed: Mapping[Vertex, int],
    ) -> Callable[[tuple[int, ...]], int]:
        def weight(values: tuple[int, ...]) -> int:
            return self._extensions(parts, {**fixed, **dict(zip(key_vars, values))})

        return weight

    def _record(self, key_vars: tuple[Vertex, ...], entries: int) -> None:
        self.counters.cache_builds += 1
        if key_vars not in self.counters.caches:
            self.counters.caches[key_vars] = CacheRecord(scope=list(key_vars), entries=entries)

    def count(
        self,
        factors: Sequence[_Factor],
        variables: VertexSet,
        fixed: Mapping[Vertex, int],
        want_witness: bool,
        separator: VertexSet | None = None,
    ) -> tuple[int, dict[Vertex, int] | None]:
        if separator is None:
            if self.recurse and len(variables) > self.threshold:
                separator = self._choose_separator(factors, variables)
            if separator is None:
                return self.plain(factors, sorted(variables), fixed, want_witness)

        fill = fill_in(self._primal(factors, variables), separator)
        component_of = {v: i for i, c in enumerate(fill.components) for v in c}
        component_factors: list[list[_Factor]] = [[] for _ in fill.components]
        stage_factors: list[_Factor] = []
        for factor in factors:
            touched = {component_of[v] for v in factor.scope if v in component_of}
            if touched:
                component_factors[touched.pop()].append(factor)
            else:
                stage_factors.append(factor)

        # Components sharing an attachment set share one cache of product counts.
        groups: dict[tuple[Vertex, ...], list[tuple[VertexSet, list[_Factor]]]] = {}
        for component, attachment, local in zip(
            fill.components, fill.attachment_sets, component_factors
        ):
            groups.setdefault(tuple(sorted(attachment)), []).append((component, local))

        stored = 0
        if len(groups) == 1 and fill.attachment_sets[0] == fill.separator:
            # Conditioning: the stage loops over the separator values and stores nothing.
            [(key_vars, parts)] = groups.items()
            stage_factors.append(
                _Factor(scope=key_vars, weight=self._conditioned(parts, key_vars, fixed))
            )
        else:
            for key_vars, parts in groups.items():
                cache: dict[tuple[int, ...], int] = {}
                for values in product(range(self.domain_size), repeat=len(key_vars)):
                    context = {**fixed, **dict(zip(key_vars, values))}
                    cache[values] = self._extensions(parts, context)
                    stored += 1
                    self.counters.live_entries += 1
                    self.counters.peak_entries = max(
                        self.counters.peak_entries, self.counters.live_entries
                    )
                self._record(key_vars, len(cache))
                stage_factors.append(_Factor(scope=key_vars, weight=self._lookup(cache)))

        total, stage_witness = self.count(stage_factors, fill.separator, fixed, want_witness)

        witness = None
        if want_witness and total > 0:
            # Each component is searched again under the chosen separator values.
            witness = dict(stage_witness)
            for component, attachment, local in zip(
                fill.components, fill.attachment_sets, component_factors
            ):
                context = {**fixed, **{v: witness[v] for v in attachment}}
                _, part = self.count(local, component, context, True)
                witness.update(part)

        self.counters.live_entries -= stored
        return total, witness


def _factors(inst: CspInstance) -> list[_Factor]:
    return [_table_factor(edge, inst.constraints[edge]) for edge in sorted(inst.constraints)]


def solve_backtrack(inst: CspInstance, var_order: Sequence[Vertex] | None = None) -> SolveStats:
    order = sorted(inst.variables) if var_order is None else list(var_order)
    EliminationOrdering.of(order).check(inst.graph)
    solver = _Solver(inst.domain_size, recurse=False, threshold=0, budget=1, seed=0)
    count, witness = solver.plain(_factors(inst), order, {}, want_witness=True)
    logger.info(f"Backtracking: {count} solutions, {solver.counters.node_expansions} expansions")
    return solver.stats(count, witness)


def solve_with_separator(
    inst: CspInstance,
    s: Iterable[Vertex],
    recurse: bool = False,
    *,
    threshold: int | None = None,
    budget: int | None = None,
    seed: int | None = None,
) -> SolveStats:
    """Solve with per-component caches keyed by attachment-set tuples.

    With ``recurse`` the separator stage, and every component above
    ``threshold`` variables, is split again at a separator chosen by
    separator search.
    """
    separator = check_membership(inst.graph, s)
    csp = settings.csp
    solver = _Solver(
        inst.domain_size,
        recurse=recurse,
        threshold=csp.csp_base_threshold if threshold is None else threshold,
        budget=csp.csp_search_budget if budget is None else budget,
        seed=settings.treewidth.tw_seed if seed is None else seed,
    )
    count, witness = solver.count(
        _factors(inst), inst.variables, {}, want_witness=True, separator=separator
    )
    logger.info(
        f"Separator {sorted(separator)} (recurse={recurse}): {count} solutions, "
        f"{solver.counters.node_expansions} expansions, "
        f"{solver.counters.cache_lookups} lookups, peak {solver.counters.peak_entries} entries"
    )
    return solver.stats(count, witness)


def operation_count(stats: SolveStats) -> int:
    return stats.operations


def peak_cache_entries(stats: SolveStats) -> int:
    return stats.cache_entries


def log_log_slope(ds: Sequence[int], counts: Sequence[int]) -> float:
    """Least-squares slope of log(count) against log(d)."""
    if len(set(ds)) < 3:
        raise DegenerateDataError(f"Need at least 3 distinct domain sizes, got {sorted(set(ds))}")
    if any(c <= 0 for c in counts):
        raise DegenerateDataError(f"Zero count among {dict(zip(ds, counts))}")
    slope, _ = np.polyfit(np.log(ds), np.log(counts), 1)
    return float(slope)


def fit_growth_exponent(
    inst_family: Callable[[int], CspInstance],
    solver: Callable[[CspInstance], SolveStats],
    d_values: Iterable[int],
    metric: Callable[[SolveStats], int] = operation_count,
) -> float:
    """Growth exponent of ``metric`` over the instances ``inst_family(d)``."""
    ds = sorted(set(d_values))
    if len(ds) < 3:
        raise DegenerateDataError(f"Need at least 3 distinct domain sizes, got {ds}")
    counts = [metric(solver(inst_family(d))) for d in ds]
    slope = log_log_slope(ds, counts)
    logger.debug(f"Growth fit over d={ds}: counts {counts}, slope {slope:.3f}")
    return slope


def all_different_family(graph: Graph) -> Callable[[int], CspInstance]:
    return lambda d: CspInstance.all_different(graph, d)


def random_csp(
    rng: random.Random, max_vertices: int = 12, domain_sizes: Sequence[int] = (2, 3, 4)
) -> CspInstance:
    """A random graph with random tables, reproducible from ``rng``."""
    n = rng.randint(1, max_vertices)
    graph = random_gnp(n, rng.uniform(0.3, 0.6), seed=rng.randrange(2**31))
    d = rng.choice(list(domain_sizes))
    return random_instance(
        graph, d, density=rng.uniform(0.3, 0.5), rng=np.random.default_rng(rng.randrange(2**31))
    )
