import json
import statistics
import time
from dataclasses import asdict, dataclass
from datetime import datetime
from enum import Enum

from src.csp import CspInstance, SolveStats, solve_backtrack, solve_with_separator
from src.graph import Graph, VertexSet
from src.utils.families import worked_example

SEPARATOR = frozenset({3, 4, 5, 8})
SMALLER_SEPARATOR = frozenset({3, 5, 8})


class Scheme(str, Enum):
    BACKTRACK = "backtrack"
    SEPARATOR = "separator"
    RECURSIVE = "recursive"


@dataclass
class RunMetrics:
    timestamp: datetime
    scheme: str
    domain_size: int
    latency_ms: float
    node_expansions: int
    cache_lookups: int
    operations: int
    peak_cache_entries: int
    caches: int
    satisfiable: bool
    solution_count: int


def solve(
    inst: CspInstance,
    scheme: Scheme,
    separator: VertexSet = SMALLER_SEPARATOR,
    recursive_separator: VertexSet = SEPARATOR,
) -> SolveStats:
    match scheme:
        case Scheme.BACKTRACK:
            return solve_backtrack(inst)
        case Scheme.SEPARATOR:
            return solve_with_separator(inst, separator, recurse=False)
        case Scheme.RECURSIVE:
            return solve_with_separator(inst, recursive_separator, recurse=True)


def run_benchmark(
    scheme: Scheme,
    domain_sizes: list[int],
    graph: Graph | None = None,
) -> list[RunMetrics]:
    """Solve the all-different instance on ``graph`` once per domain size."""
    graph = graph or worked_example()
    metrics: list[RunMetrics] = []
    for i, d in enumerate(domain_sizes):
        print(f"📤 Run {i + 1}/{len(domain_sizes)}: {scheme.value} with d={d}...")
        inst = CspInstance.all_different(graph, d)
        t1 = time.perf_counter()
        stats = solve(inst, scheme)
        latency_ms = (time.perf_counter() - t1) * 1000
        metrics.append(
            RunMetrics(
                timestamp=datetime.now(),
                scheme=scheme.value,
                domain_size=d,
                latency_ms=latency_ms,
                node_expansions=stats.node_expansions,
                cache_lookups=stats.cache_lookups,
                operations=stats.operations,
                peak_cache_entries=stats.cache_entries,
                caches=len(stats.caches),
                satisfiable=stats.satisfiable,
                solution_count=stats.solution_count,
            )
        )
    return metrics


def export_metrics(
    scheme: Scheme,
    metrics: list[RunMetrics],
    filename: str = "separator_caching_metrics.json",
):
    """Export metrics to JSON file"""
    data = {
        "scheme": scheme.value,
        "timestamp": datetime.now().isoformat(),
        "summary": {
            "total_runs": len(metrics),
            "total_operations": sum(m.operations for m in metrics),
            "avg_latency_ms": statistics.mean([m.latency_ms for m in metrics]),
            "max_peak_cache_entries": max(m.peak_cache_entries for m in metrics),
        },
        "runs": [asdict(m) for m in metrics],
    }

    with open(filename, mode="w") as f:
        json.dump(data, f, indent=2, default=str, ensure_ascii=False)

    print(f"📁 Metrics exported to {filename}")


if __name__ == "__main__":
    scheme = Scheme.RECURSIVE
    domain_sizes = list(range(2, 9))
    filename = f"separator_caching_metrics_{scheme.value}.json"

    metrics = run_benchmark(scheme=scheme, domain_sizes=domain_sizes)
    export_metrics(scheme=scheme, metrics=metrics, filename=filename)
