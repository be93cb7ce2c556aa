import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import List, Optional

import config
from models.responses import *
from services.bench import bench_tasks, run_bench, write_csv
from services.density import parse_rational
from services.errors import (
    ArgumentError,
    DegeneracyError,
    GraphParseError,
    InfeasibleParamsError,
    InvariantViolation,
    SizeGuardError,
)
from services.graph_core import GENERATORS, parse_colouring, parse_dimacs
from services.reconfiguration import ReconfigurationService
from services.recolor import RecolourStep, parse_sequence, write_sequence

logger = logging.getLogger("reconf")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_FAILURE = 3

ORACLE_CSV_COLUMNS = ["n", "k", "colourings", "components", "diameter", "bound"]

service = ReconfigurationService()


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); exit 2 is reserved for infeasible parameters
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_graph(path: str):
    return parse_dimacs(_read(path))


def _epsilon(args):
    return None if getattr(args, "eps", None) is None else parse_rational(args.eps)


def _emit(args, response, text: str) -> None:
    if args.format == OutputFormatEnum.json.value:
        print(response.model_dump_json(indent=2))
    else:
        print(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _append_oracle_csv(path: Optional[str], row: List) -> None:
    if not path:
        return
    target = Path(path)
    fresh = not target.exists() or target.stat().st_size == 0
    with target.open("a", newline="") as handle:
        writer = csv.writer(handle)
        if fresh:
            writer.writerow(ORACLE_CSV_COLUMNS)
        writer.writerow(row)


def cmd_mad(args) -> int:
    """Print the maximum average degree and an extremal subgraph"""
    graph = _load_graph(args.graph)
    response = MadResponse(**service.compute_mad(graph))
    _emit(args, response, f"mad = {response.mad}\nsubset = {' '.join(map(str, response.subset))}")
    return EXIT_OK


def cmd_peel(args) -> int:
    """Print the peeling layers with their certificate flags"""
    graph = _load_graph(args.graph)
    response = PeelResponse(**service.peel(graph, args.k, args.d, _epsilon(args)))
    lines = [f"d = {response.d}, epsilon = {response.epsilon}, layers = {len(response.layers)}"]
    for layer, certificate in zip(response.layers, response.certificates):
        lines.append(
            f"{' '.join(map(str, layer))} | size_bound_met={_yes(certificate.size_bound_met)}"
            f" mad_hypothesis_met={_yes(certificate.mad_hypothesis_met)}"
        )
    _emit(args, response, "\n".join(lines))
    return EXIT_OK


def cmd_recolor(args) -> int:
    """Write a recolouring sequence from alpha to beta"""
    graph = _load_graph(args.graph)
    alpha = parse_colouring(_read(args.alpha), graph.n, args.k)
    beta = parse_colouring(_read(args.beta), graph.n, args.k)
    response = RecolorResponse(**service.recolour(graph, alpha, beta, args.k, args.d, _epsilon(args)))
    steps = [RecolourStep(step.vertex - 1, step.colour) for step in response.steps]
    summary = (
        f"length={response.length} bound={response.bound} levels={response.levels}"
        f" per_vertex_max={response.per_vertex_max} bounds_met={_yes(response.bounds_met)}"
    )
    text = write_sequence(steps, summary).rstrip("\n")
    if args.output:
        Path(args.output).write_text(text + "\n")
        logger.info("wrote %d steps to %s", response.length, args.output)
        if args.format == OutputFormatEnum.json.value:
            print(response.model_dump_json(indent=2))
        return EXIT_OK
    _emit(args, response, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Check a sequence file against alpha and beta"""
    graph = _load_graph(args.graph)
    alpha = parse_colouring(_read(args.alpha), graph.n, args.k)
    beta = parse_colouring(_read(args.beta), graph.n, args.k)
    steps = parse_sequence(_read(args.sequence))
    response = VerifyResponse(**service.verify(graph, alpha, beta, steps))
    if response.ok:
        text = "ok"
    elif response.step is None:
        text = f"failure: {response.reason}"
    else:
        text = f"failure at step {response.step}: {response.reason}"
        if response.detail:
            text += f" ({response.detail})"
    _emit(args, response, text)
    return EXIT_OK if response.ok else EXIT_FAILURE


def cmd_oracle_distance(args) -> int:
    """Print the exact distance between two colourings in R_k(G)"""
    graph = _load_graph(args.graph)
    alpha = parse_colouring(_read(args.alpha), graph.n, args.k)
    beta = parse_colouring(_read(args.beta), graph.n, args.k)
    response = DistanceResponse(**service.oracle_distance(graph, args.k, alpha, beta))
    _emit(args, response, f"distance = {response.distance if response.reachable else 'unreachable'}")
    return EXIT_OK


def cmd_oracle_summary(args) -> int:
    """Print colouring, component and frozen counts of R_k(G)"""
    graph = _load_graph(args.graph)
    response = SummaryResponse(**service.oracle_summary(graph, args.k))
    text = "\n".join([
        f"colourings = {response.colouring_count}",
        f"components = {response.component_count}",
        f"diameters = {' '.join(map(str, response.component_diameters))}",
        f"frozen = {response.frozen_count}",
    ])
    _emit(args, response, text)
    _append_oracle_csv(args.csv, [
        response.n, response.k, response.colouring_count, response.component_count,
        max(response.component_diameters, default=0), "",
    ])
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    """Compare the exact diameter of R_k(G) with the length budget"""
    graph = _load_graph(args.graph)
    response = CheckResponse(**service.oracle_check(graph, args.k, args.d, _epsilon(args)))
    text = "\n".join([
        f"d = {response.d}, epsilon = {response.epsilon}",
        f"connected = {_yes(response.connected)}",
        f"diameter = {response.diameter}",
        f"bound = {response.bound} (L={response.levels}, T={response.per_vertex_max})",
        f"hypothesis = {_yes(response.hypothesis_met)}",
        f"holds = {_yes(response.holds)}",
    ])
    _emit(args, response, text)
    _append_oracle_csv(args.csv, [
        response.n, response.k, response.colouring_count, response.component_count,
        response.diameter, response.bound,
    ])
    return EXIT_OK if response.holds else EXIT_FAILURE


def cmd_bench(args) -> int:
    """Run the recolouring harness on a graph family and write RunRecord CSV"""
    tasks = bench_tasks(
        FamilyEnum(args.family), args.n, args.k, args.seed,
        seeds_per_size=args.seeds, t=args.t, d=args.d, epsilon=args.eps, with_oracle=args.oracle,
    )
    records = run_bench(tasks, args.workers)
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            write_csv(records, handle)
        logger.info("wrote %d records to %s", len(records), args.csv)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK


def cmd_generate(args) -> int:
    """Write a generated graph in DIMACS format"""
    response = GenerateResponse(**service.generate(args.kind, args.sizes, args.seed))
    if args.output:
        Path(args.output).write_text(response.graph)
    _emit(args, response, response.graph.rstrip("\n"))
    return EXIT_OK


def cmd_colour(args) -> int:
    """Write a seeded random proper k-colouring of a graph"""
    graph = _load_graph(args.graph)
    response = ColourResponse(**service.colour(graph, args.k, args.seed))
    if args.output:
        Path(args.output).write_text(response.colouring)
    _emit(args, response, response.colouring.rstrip("\n"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    output = _Parser(add_help=False)
    output.add_argument("--format", choices=[f.value for f in OutputFormatEnum], default="text")

    palette = _Parser(add_help=False)
    palette.add_argument("--k", type=int, required=True, help="palette size")

    overrides = _Parser(add_help=False)
    overrides.add_argument("--d", type=int, default=None, help="override the derived degree parameter")
    overrides.add_argument("--eps", default=None, help="override epsilon (rational 'p/q')")

    parser = _Parser(
        prog="reconf",
        description="Recolouring sequences for graphs of bounded maximum average degree",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    mad_parser = commands.add_parser("mad", parents=[output], help=cmd_mad.__doc__)
    mad_parser.add_argument("graph", help="DIMACS graph file ('-' for stdin)")
    mad_parser.set_defaults(handler=cmd_mad)

    peel_parser = commands.add_parser("peel", parents=[output, palette, overrides], help=cmd_peel.__doc__)
    peel_parser.add_argument("graph")
    peel_parser.set_defaults(handler=cmd_peel)

    recolor_parser = commands.add_parser(
        "recolor", parents=[output, palette, overrides], help=cmd_recolor.__doc__
    )
    recolor_parser.add_argument("graph")
    recolor_parser.add_argument("alpha", help="colouring file of the start colouring")
    recolor_parser.add_argument("beta", help="colouring file of the target colouring")
    recolor_parser.add_argument("--output", "-o", default=None, help="write the sequence here instead of stdout")
    recolor_parser.set_defaults(handler=cmd_recolor)

    verify_parser = commands.add_parser("verify", parents=[output, palette], help=cmd_verify.__doc__)
    verify_parser.add_argument("graph")
    verify_parser.add_argument("alpha")
    verify_parser.add_argument("beta")
    verify_parser.add_argument("sequence", help="sequence file ('-' for stdin)")
    verify_parser.set_defaults(handler=cmd_verify)

    oracle_parser = commands.add_parser("oracle", help="brute-force checks on R_k(G)")
    oracle_commands = oracle_parser.add_subparsers(dest="oracle_command", required=True)
    distance_parser = oracle_commands.add_parser(
        "distance", parents=[output, palette], help=cmd_oracle_distance.__doc__
    )
    distance_parser.add_argument("graph")
    distance_parser.add_argument("alpha")
    distance_parser.add_argument("beta")
    distance_parser.set_defaults(handler=cmd_oracle_distance)
    summary_parser = oracle_commands.add_parser(
        "summary", parents=[output, palette], help=cmd_oracle_summary.__doc__
    )
    summary_parser.add_argument("graph")
    summary_parser.add_argument("--csv", default=None, help="append a CSV row to this file")
    summary_parser.set_defaults(handler=cmd_oracle_summary)
    check_parser = oracle_commands.add_parser(
        "check", parents=[output, palette, overrides], help=cmd_oracle_check.__doc__
    )
    check_parser.add_argument("graph")
    check_parser.add_argument("--csv", default=None, help="append a CSV row to this file")
    check_parser.set_defaults(handler=cmd_oracle_check)

    bench_parser = commands.add_parser("bench", parents=[palette, overrides], help=cmd_bench.__doc__)
    bench_parser.add_argument("family", choices=[f.value for f in FamilyEnum])
    bench_parser.add_argument("--n", type=int, nargs="*", default=[], help="ascending instance sizes")
    bench_parser.add_argument("--t", type=int, default=1, help="forests per forest_union instance")
    bench_parser.add_argument("--seeds", type=int, default=1, help="instances per size")
    bench_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    bench_parser.add_argument("--workers", type=int, default=None, help="process pool size")
    bench_parser.add_argument("--oracle", action="store_true", help="attach BFS distances where feasible")
    bench_parser.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    bench_parser.set_defaults(handler=cmd_bench)

    generate_parser = commands.add_parser("generate", parents=[output], help=cmd_generate.__doc__)
    generate_parser.add_argument("kind", choices=list(GENERATORS))
    generate_parser.add_argument("sizes", type=int, nargs="+", help="n | n | n | r c | n | n t")
    generate_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    generate_parser.add_argument("--output", "-o", default=None)
    generate_parser.set_defaults(handler=cmd_generate)

    colour_parser = commands.add_parser("colour", parents=[output, palette], help=cmd_colour.__doc__)
    colour_parser.add_argument("graph")
    colour_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    colour_parser.add_argument("--output", "-o", default=None)
    colour_parser.set_defaults(handler=cmd_colour)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (GraphParseError, ArgumentError, SizeGuardError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InfeasibleParamsError, DegeneracyError) as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvariantViolation as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
