from pathlib import Path

from scripts.separator_caching.print_metrics import growth, print_summary
from scripts.separator_caching.run import Scheme, export_metrics, run_benchmark


def compare_schemes(
    domain_sizes: list[int],
    backtrack_domain_sizes: list[int],
    save_dir: str = "scripts/output",
):
    """Plain backtracking against separator caching on the all-different family.

    Backtracking is exhaustive, so it only runs on ``backtrack_domain_sizes``.
    """
    save_dir = Path(save_dir)
    save_dir.mkdir(parents=True, exist_ok=True)

    print("\n" + "=" * 80)
    print("🔬 RUNNING COMPARISON: BACKTRACKING vs SEPARATOR CACHING")
    print("=" * 80 + "\n")

    results = {}
    for phase, (scheme, sizes) in enumerate(
        [
            (Scheme.BACKTRACK, backtrack_domain_sizes),
            (Scheme.SEPARATOR, domain_sizes),
            (Scheme.RECURSIVE, domain_sizes),
        ],
        start=1,
    ):
        print(f"Phase {phase}: {scheme.value}...")
        metrics = run_benchmark(scheme, sizes)
        export_metrics(
            scheme=scheme,
            metrics=metrics,
            filename=str(save_dir / f"separator_caching_metrics_{scheme.value}.json"),
        )
        results[scheme] = metrics

    for scheme, metrics in results.items():
        print(f"\n🟢 {'=' * 78}")
        print(f"{scheme.value.upper()} RESULTS:")
        print_summary(metrics)

    print("\n" + "=" * 80)
    print("🏆 FINAL COMPARISON")
    print("=" * 80 + "\n")

    print("⚡ Operations at Shared Domain Sizes:")
    plain = {m.domain_size: m.operations for m in results[Scheme.BACKTRACK]}
    recursive = {m.domain_size: m.operations for m in results[Scheme.RECURSIVE]}
    for d in sorted(plain.keys() & recursive.keys()):
        ratio = plain[d] / recursive[d]
        print(
            f"   d={d:<3} backtracking={plain[d]:<10,} recursive={recursive[d]:<10,} "
            f"({ratio:.1f}x)"
        )
    print()

    print("📐 Growth Exponents:")
    for scheme, metrics in results.items():
        slope = growth(metrics, "operations")
        print(f"   {scheme.value:<20} {'n/a' if slope is None else f'{slope:.2f}'}")
    print("\n" + "=" * 80 + "\n")

    return results


if __name__ == "__main__":
    save_dir = "scripts/separator_caching/output"

    results = compare_schemes(
        domain_sizes=list(range(2, 9)),
        backtrack_domain_sizes=[2, 3, 4],
        save_dir=save_dir,
    )
