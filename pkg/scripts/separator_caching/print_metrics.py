import statistics

from src.csp import log_log_slope
from src.errors import DegenerateDataError
from scripts.separator_caching.run import RunMetrics


def growth(metrics: list[RunMetrics], field: str) -> float | None:
    try:
        return log_log_slope(
            [m.domain_size for m in metrics], [getattr(m, field) for m in metrics]
        )
    except DegenerateDataError:
        return None


def print_summary(metrics: list[RunMetrics]):
    if not metrics:
        print("No metrics to summarize")
        return

    latencies = [m.latency_ms for m in metrics]
    satisfiable = sum(1 for m in metrics if m.satisfiable)

    print(f"\n{'=' * 80}")
    print(f"📊 BENCHMARK SUMMARY ({metrics[0].scheme})")
    print(f"{'=' * 80}\n")

    print("📈 Runs:")
    print(f"   Domain Sizes:        {', '.join(str(m.domain_size) for m in metrics)}")
    print(f"   Satisfiable:         {satisfiable} of {len(metrics)}")
    print()

    print("⚡ Latency Statistics:")
    print(f"   Average:             {statistics.mean(latencies):.1f} ms")
    print(f"   Median:              {statistics.median(latencies):.1f} ms")
    print(f"   Min:                 {min(latencies):.1f} ms")
    print(f"   Max:                 {max(latencies):.1f} ms")
    print()

    print("🔢 Work per Domain Size:")
    for m in metrics:
        print(
            f"   d={m.domain_size:<3} expansions={m.node_expansions:<9,} "
            f"lookups={m.cache_lookups:<9,} peak cache={m.peak_cache_entries:,}"
        )
    print()

    operations_slope = growth(metrics, "operations")
    space_slope = growth(metrics, "peak_cache_entries")
    print("📐 Growth Exponents (log-log slope in d):")
    print(f"   Operations:          {_format_slope(operations_slope)}")
    print(f"   Peak Cache Entries:  {_format_slope(space_slope)}")
    print(f"{'=' * 80}\n")


def _format_slope(slope: float | None) -> str:
    return "n/a" if slope is None else f"{slope:.2f}"
