import argparse
import sys
import time
from pathlib import Path

from loguru import logger
from pydantic import BaseModel
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from src.bounds import (
    BoundReport,
    CheapEvaluator,
    ExactEvaluator,
    GreedyEvaluator,
    RecursionConfig,
    combine_decompositions,
    fill_in,
    recursive_bound,
    separator_as_components_bound,
)
from src.csp import SolveStats, solve_backtrack, solve_with_separator
from src.decomposition import TreeDecomposition, validate, width
from src.elimination import greedy_treewidth
from src.errors import FormatError, TreewidthError
from src.exact import exact_treewidth
from src.graph import Graph, check_membership, induced_subgraph
from src.separators import enumerate_candidates
from src.settings import settings
from src.utils.formats import read_constraints, read_graph, read_td, write_td

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FORMAT = 2
EXIT_SEMANTIC = 3


class BoundReportDocument(BoundReport):
    input: str
    separator_source: str
    decomposition_output: str | None = None
    decomposition_width: int | None = None
    wall_time_ms: float | None = None


class CspReportDocument(SolveStats):
    graph: str
    constraints: str
    method: str
    separator: list[int] | None = None
    recurse: bool = False
    wall_time_ms: float | None = None


def _configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(
        sys.stderr,
        level="DEBUG" if verbose else settings.logging.log_level,
        format="{time:YYYY-MM-DD HH:mm:ss} - {level} - {message}",
    )


def _parse_separator(text: str) -> list[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise FormatError(f"Separator must be comma-separated integers, got {text!r}") from None


def _emit_json(console: Console, document: BaseModel) -> None:
    console.out(document.model_dump_json(indent=2, exclude_none=True), highlight=False)


def _write_td(path: str, t: TreeDecomposition, g: Graph) -> None:
    Path(path).write_bytes(write_td(t, g.vertex_count))
    logger.info(f"Decomposition of width {width(t)} written to {path}")


def _separator_decomposition(g: Graph, separator: frozenset[int], exact: bool) -> TreeDecomposition:
    solve = (lambda h: exact_treewidth(h)[1]) if exact else (lambda h: greedy_treewidth(h)[1])
    fill = fill_in(g, separator)
    return combine_decompositions(
        solve(fill.augmented_separator_graph),
        [solve(induced_subgraph(g, c)) for c in fill.components],
        fill,
    )


def cmd_bound(args: argparse.Namespace, console: Console) -> int:
    started = time.perf_counter()
    g = read_graph(args.input)
    tw_fn = ExactEvaluator() if args.tw == "exact" else GreedyEvaluator()

    if args.search:
        best = enumerate_candidates(
            g, args.budget, seed=args.seed, evaluator=CheapEvaluator()
        )[0]
        separator, source = best.separator, best.source.value
    else:
        separator = check_membership(g, _parse_separator(args.separator))
        source = "user"

    report = separator_as_components_bound(g, separator, tw_fn)
    document = BoundReportDocument(
        **report.model_dump(), input=args.input, separator_source=source
    )
    if args.output:
        decomposition = _separator_decomposition(g, separator, exact=args.tw == "exact")
        _write_td(args.output, decomposition, g)
        document.decomposition_output = args.output
        document.decomposition_width = width(decomposition)
    elapsed = (time.perf_counter() - started) * 1000
    if args.timing:
        document.wall_time_ms = elapsed

    if args.json:
        _emit_json(console, document)
        return EXIT_OK

    console.out(
        f"clique={report.clique_bound} components={report.components_bound} "
        f"corollary={report.corollary_bound}",
        highlight=False,
    )
    for key in ("input", "separator_source", "tw_hs", "sub_method", "decomposition_output"):
        value = getattr(document, key)
        if value is not None:
            console.out(f"{key}: {getattr(value, 'value', value)}", highlight=False)
    console.out(f"separator: {','.join(map(str, report.separator))}", highlight=False)
    console.out(f"fill_edges: {report.fill_edges}", highlight=False)
    console.out(f"wall_time_ms: {elapsed:.1f}", highlight=False)

    table = Table(title="Components")
    for column in ("i", "vertices", "S_i", "|S_i|", "tw(G_i)", "|S_i| + tw(G_i)"):
        table.add_column(column)
    for term in report.per_component:
        table.add_row(
            str(term.index + 1),
            ",".join(map(str, term.vertices)),
            ",".join(map(str, term.attachment)),
            str(term.attachment_size),
            str(term.treewidth),
            str(term.attachment_size + term.treewidth),
        )
    console.print(table)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, console: Console) -> int:
    g = read_graph(args.input)
    config = RecursionConfig.from_settings(
        exact_threshold=args.threshold, seed=args.seed, search_budget=args.budget
    )
    bound, decomposition = recursive_bound(g, config)
    _write_td(args.output, decomposition, g)
    console.out(f"width: {bound}", highlight=False)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, console: Console) -> int:
    g = read_graph(args.graph)
    t = read_td(args.td, vertex_count=g.vertex_count)
    verdict = validate(t, g)
    if verdict.valid:
        console.out(f"valid: width {width(t)}", highlight=False)
        return EXIT_OK

    table = Table(title="Violations")
    table.add_column("kind")
    table.add_column("witness")
    table.add_column("message")
    for violation in verdict.violations:
        table.add_row(
            violation.kind.value, ",".join(map(str, violation.witness)), violation.message
        )
    console.out("invalid", highlight=False)
    console.print(table)
    return EXIT_INVALID


def cmd_exact(args: argparse.Namespace, console: Console) -> int:
    g = read_graph(args.input)
    tw, decomposition = exact_treewidth(g, limit=args.limit)
    if args.output:
        _write_td(args.output, decomposition, g)
    console.out(str(tw), highlight=False)
    return EXIT_OK


def cmd_csp_solve(args: argparse.Namespace, console: Console) -> int:
    started = time.perf_counter()
    g = read_graph(args.graph)
    inst = read_constraints(args.constraints, g)

    separator = None
    if args.search:
        separator = enumerate_candidates(g, args.budget, seed=args.seed)[0].separator
    elif args.separator is not None:
        separator = check_membership(g, _parse_separator(args.separator))

    if separator is None:
        stats = solve_backtrack(inst)
        method = "backtrack"
    else:
        stats = solve_with_separator(
            inst,
            separator,
            recurse=args.recurse,
            threshold=args.threshold,
            budget=args.budget,
            seed=args.seed,
        )
        method = "separator"

    document = CspReportDocument(
        **stats.model_dump(),
        graph=args.graph,
        constraints=args.constraints,
        method=method,
        separator=sorted(separator) if separator is not None else None,
        recurse=args.recurse,
    )
    if not args.stats:
        document.caches = []
    if args.timing:
        document.wall_time_ms = (time.perf_counter() - started) * 1000

    if args.json:
        _emit_json(console, document)
        return EXIT_OK

    console.out(f"satisfiable: {str(stats.satisfiable).lower()}", highlight=False)
    if stats.witness is not None:
        assignment = " ".join(f"{v}={a}" for v, a in stats.witness.items())
        console.out(f"witness: {assignment}", highlight=False)
    if args.stats:
        lines = [
            f"method: {method}",
            f"solution_count: {stats.solution_count}",
            f"node_expansions: {stats.node_expansions}",
            f"cache_lookups: {stats.cache_lookups}",
            f"cache_entries: {stats.cache_entries}",
            f"caches: {len(stats.caches)}",
            f"cache_builds: {stats.cache_builds}",
        ]
        console.print(Panel("\n".join(lines), title="SolveStats", border_style="cyan"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    tw = settings.treewidth
    parser = argparse.ArgumentParser(
        prog="separator-treewidth",
        description="Treewidth bounds from partially filled-in separators.",
    )
    parser.add_argument("--verbose", action="store_true", help="Log debug details to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    bound = commands.add_parser("bound", help="Clique, components and corollary bounds")
    bound.add_argument("--input", required=True)
    choice = bound.add_mutually_exclusive_group(required=True)
    choice.add_argument("--separator", help="Comma-separated vertex labels")
    choice.add_argument("--search", action="store_true", help="Use the best-scoring candidate")
    bound.add_argument("--tw", choices=["exact", "greedy"], default="exact")
    bound.add_argument("--json", action="store_true")
    bound.add_argument("--timing", action="store_true", help="Include wall time in --json")
    bound.add_argument("--output", help="Write the combined decomposition as .td")
    bound.add_argument("--seed", type=int, default=tw.tw_seed)
    bound.add_argument("--budget", type=int, default=tw.tw_search_budget)
    bound.set_defaults(handler=cmd_bound)

    decompose = commands.add_parser("decompose", help="Recursive separator decomposition")
    decompose.add_argument("--input", required=True)
    decompose.add_argument("--output", required=True)
    decompose.add_argument("--threshold", type=int, default=tw.tw_exact_threshold)
    decompose.add_argument("--seed", type=int, default=tw.tw_seed)
    decompose.add_argument("--budget", type=int, default=tw.tw_search_budget)
    decompose.set_defaults(handler=cmd_decompose)

    check = commands.add_parser("validate", help="Check a .td file against a .gr file")
    check.add_argument("--graph", required=True)
    check.add_argument("--td", required=True)
    check.set_defaults(handler=cmd_validate)

    exact = commands.add_parser("exact", help="Exact treewidth of a small graph")
    exact.add_argument("--input", required=True)
    exact.add_argument("--limit", type=int, default=tw.tw_exact_limit)
    exact.add_argument("--output")
    exact.set_defaults(handler=cmd_exact)

    csp = commands.add_parser("csp", help="Binary CSP solving")
    csp_commands = csp.add_subparsers(dest="csp_command", required=True)
    solve = csp_commands.add_parser("solve", help="Solve a CSP given as .gr + constraints")
    solve.add_argument("--graph", required=True)
    solve.add_argument("--constraints", required=True)
    separator = solve.add_mutually_exclusive_group()
    separator.add_argument("--separator", help="Comma-separated variable labels")
    separator.add_argument("--search", action="store_true")
    solve.add_argument("--recurse", action="store_true")
    solve.add_argument("--stats", action="store_true")
    solve.add_argument("--json", action="store_true")
    solve.add_argument("--timing", action="store_true")
    solve.add_argument("--threshold", type=int, default=settings.csp.csp_base_threshold)
    solve.add_argument("--seed", type=int, default=tw.tw_seed)
    solve.add_argument("--budget", type=int, default=settings.csp.csp_search_budget)
    solve.set_defaults(handler=cmd_csp_solve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    console = Console(soft_wrap=True)
    error_console = Console(stderr=True, soft_wrap=True)

    try:
        return args.handler(args, console)
    except FormatError as e:
        error_console.print(f"[red]Format error:[/red] {e}")
        return EXIT_FORMAT
    except OSError as e:
        error_console.print(f"[red]Cannot read input:[/red] {e}")
        return EXIT_FORMAT
    except TreewidthError as e:
        error_console.print(f"[red]{type(e).__name__}:[/red] {e}")
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
