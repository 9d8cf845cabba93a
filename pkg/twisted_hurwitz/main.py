"""Command line interface for twisted double Hurwitz numbers.

Examples:
    python -m twisted_hurwitz count --g 1 --mu 4 --nu 2,2 --engine both
    python -m twisted_hurwitz graphs --g 1 --mu 4 --nu 2,2 --format dot --out graphs
    python -m twisted_hurwitz poly --g 1 --shape 1,1
    python -m twisted_hurwitz wallcross --shape 2,2 --wall I=1:J=1 --points 3

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 cap exceeded,
4 any other invalid input.
"""
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from . import helpers
from .chambers import ChamberSignature, Wall, realized_chambers, wall_list
from .combinatorics import Partition, b_tilde_cardinality, enumerate_b_tilde
from .database import HurwitzDB
from .exceptions import CapExceededError, DegreeBoundViolation, HurwitzError
from .oracle import (HurwitzInput, iter_twisted_factorizations,
                     twisted_hurwitz_bruteforce)
from .polynomials import interpolate_chamber
from .settings import RunConfig, load_settings
from .tropical import (classical_weight, enumerate_classical_covers,
                       graph_contributions, twisted_hurwitz_tropical)
from .tropical.export import (classical_to_dot, classical_to_json,
                              cover_to_dot, cover_to_json, export_dot_files)
from .wallcrossing import check_wall

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INVALID = 4


# Parsing helpers
def parse_partition(text: str, name: str) -> Tuple[int, ...]:
    "Read a partition, sorting its parts in weakly decreasing order"
    parts = helpers.parse_parts(text)
    ordered = sorted(parts, reverse=True)
    if ordered != parts:
        logger.warning("%s=%s reordered to %s", name, text,
                       helpers.format_parts(ordered))
    return tuple(ordered)


def positive_int(text: str) -> int:
    "argparse type for counts that must be at least 1"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def parse_shape(text: str) -> Tuple[int, int]:
    "Read a shape m,n"
    parts = helpers.parse_parts(text)
    if len(parts) != 2:
        raise HurwitzError(f"A shape is written m,n, got {text!r}")
    return parts[0], parts[1]


def open_cache(config: RunConfig) -> Optional[HurwitzDB]:
    if config.cache_path is None:
        return None
    return HurwitzDB(config.cache_path)


def emit(line: str = ""):
    print(line, flush=True)


# Subcommands
def cmd_count(config: RunConfig, args) -> int:
    "Print the twisted double Hurwitz number from the selected engines"
    config.check_caps()
    mu, nu = Partition(config.mu), Partition(config.nu)
    connected = not args.disconnected
    if not connected and config.engine != "brute":
        raise HurwitzError("Disconnected counts come from the brute-force engine only")  # noqa E501
    cache = open_cache(config)
    values = {}

    def brute():
        inp = HurwitzInput(config.g, mu, nu, connected=connected)
        return twisted_hurwitz_bruteforce(inp, labeled=args.labeled,
                                          **config.engine_kwargs)

    def tropical():
        return twisted_hurwitz_tropical(config.g, mu, nu, labeled=args.labeled,  # noqa E501
                                        workers=config.workers,
                                        max_branch=config.max_branch_points)

    engines = {"brute": brute, "tropical": tropical}
    selected = ["brute", "tropical"] if config.engine == "both" else [config.engine]  # noqa E501
    for engine in selected:
        logger.info("Running the %s engine on g=%d mu=%s nu=%s",
                    engine, config.g, mu, nu)
        if cache is None:
            values[engine] = engines[engine]()
        else:
            values[engine] = cache.cached(engine, config.g, mu, nu,
                                          engines[engine], args.labeled,
                                          connected)

    agree = len(set(values.values())) == 1
    if config.output_format == "json":
        report = {"g": config.g, "mu": mu.to_list(), "nu": nu.to_list(),
                  "labeled": args.labeled, "connected": connected,
                  **{k: helpers.format_rational(v) for k, v in values.items()}}  # noqa E501
        if len(values) > 1:
            report["agree"] = agree
        emit(json.dumps(report))
    elif len(values) > 1:
        verdict = "==" if agree else "!="
        emit(f"{helpers.format_rational(values['brute'])} {verdict} "
             f"{helpers.format_rational(values['tropical'])} "
             f"{'OK' if agree else 'MISMATCH'}")
    else:
        emit(helpers.format_rational(values[selected[0]]))
    return EXIT_OK if agree else EXIT_FAILED


def cmd_graphs(config: RunConfig, args) -> int:
    "Print every monodromy graph of the requested type with its multiplicity"
    if args.classical:
        graphs = enumerate_classical_covers(config.g, config.mu, config.nu,
                                            labeled=args.labeled,
                                            max_branch=config.max_branch_points)  # noqa E501
        weights = [classical_weight(graph) for graph in graphs]
        records = [classical_to_json(graph, weight)
                   for graph, weight in zip(graphs, weights)]
        sources = [classical_to_dot(graph, f"graph {k + 1}")
                   for k, graph in enumerate(graphs)]
        texts = [f"graph {k + 1}: weight {helpers.format_rational(w)}"
                 for k, w in enumerate(weights)]
    else:
        contributions = graph_contributions(config.g, config.mu, config.nu,
                                            labeled=args.labeled,
                                            prune_zero=args.prune_zero,
                                            workers=config.workers,
                                            max_branch=config.max_branch_points)  # noqa E501
        weights = [c.multiplicity for c in contributions]
        records = [cover_to_json(c.cover, c.aut_order, c.multiplicity)
                   for c in contributions]
        sources = [cover_to_dot(c.cover, f"cover {k + 1}")
                   for k, c in enumerate(contributions)]
        texts = [f"graph {k + 1}: aut {c.aut_order}, multiplicity "
                 f"{helpers.format_rational(c.multiplicity)}"
                 for k, c in enumerate(contributions)]

    total = sum(weights)
    summary = f"{len(weights)} graphs, total {helpers.format_rational(total)}"
    if config.output_format == "json":
        for record in records:
            emit(json.dumps(record))
        emit(json.dumps({"graphs": len(weights),
                         "total": helpers.format_rational(total)}))
    elif config.output_format == "dot":
        if args.out is None:
            for source in sources:
                emit(source)
        else:
            paths = export_dot_files(sources, args.out)
            logger.info("Wrote %d dot files to %s", len(paths), args.out)
        print(summary, file=sys.stderr)
    else:
        for text in texts:
            emit(text)
        emit(summary)
    return EXIT_OK


def cmd_poly(config: RunConfig, args) -> int:
    "Interpolate the chamber polynomials of a shape"
    m, n = parse_shape(args.shape)
    if args.chamber is not None:
        chambers = [ChamberSignature.parse(args.chamber, m, n)]
    elif wall_list(m, n):
        chambers = realized_chambers(m, n, config.sample_bound)
    else:
        chambers = [ChamberSignature(m, n, ())]
    cache = open_cache(config)
    reports = []
    for chamber in chambers:
        logger.info("Interpolating genus %d on chamber %s", config.g, chamber)  # noqa E501
        polynomial = interpolate_chamber(config.g, m, n, chamber,
                                         bound=config.sample_bound,
                                         held_out=config.held_out,
                                         workers=config.workers, cache=cache)
        reports.append((chamber, polynomial))

    if config.output_format == "json":
        emit(json.dumps({
            "g": config.g, "shape": [m, n],
            "chambers": [{"chamber": str(chamber),
                          "polynomial": polynomial.to_json(),
                          "degrees": polynomial.degrees()}
                         for chamber, polynomial in reports]}))
    else:
        for chamber, polynomial in reports:
            degrees = ",".join(str(d) for d in polynomial.degrees())
            line = f"{polynomial}; degrees {{{degrees}}}"
            emit(line if not chamber.signs else f"chamber {chamber}: {line}")
    return EXIT_OK


def cmd_wallcross(config: RunConfig, args) -> int:
    "Compare both sides of the genus 0 wall crossing identity"
    m, n = parse_shape(args.shape)
    wall = Wall.parse(args.wall, m, n)
    results = check_wall(m, n, wall, points=args.points, literal=args.literal,  # noqa E501
                         bound=config.sample_bound, cache=open_cache(config))
    passed = sum(terms.ok for terms in results)
    verdict = "==" if passed == len(results) else "!="
    summary = f"{passed}/{len(results)} points: LHS {verdict} RHS"
    if config.output_format == "json":
        emit(json.dumps({"shape": [m, n], "wall": str(wall),
                         "literal": args.literal,
                         "points": [terms.to_json() for terms in results],
                         "passed": passed, "total": len(results)}))
    else:
        for terms in results:
            emit(f"mu={helpers.format_parts(terms.mu)} "
                 f"nu={helpers.format_parts(terms.nu)} delta={terms.delta}: "
                 f"LHS={helpers.format_rational(terms.lhs)} "
                 f"RHS={helpers.format_rational(terms.rhs)} "
                 f"{'OK' if terms.ok else 'MISMATCH'}")
        emit(summary)
    return EXIT_OK if passed == len(results) else EXIT_FAILED


def cmd_btilde(config: RunConfig, args) -> int:
    "List the elements of B~_mu"
    mu = Partition(config.mu)
    elements = enumerate_b_tilde(mu, max_points=config.max_points)
    expected = b_tilde_cardinality(mu)
    if config.output_format == "json":
        emit(json.dumps({"mu": mu.to_list(), "count": len(elements),
                         "expected": expected,
                         "elements": [str(sigma) for sigma in elements]}))
    else:
        for sigma in elements:
            emit(str(sigma))
        emit(f"{len(elements)} elements, expected {expected}")
    return EXIT_OK if len(elements) == expected else EXIT_FAILED


def cmd_tuples(config: RunConfig, args) -> int:
    "Dump the twisted factorizations as JSON lines"
    connected = not args.disconnected
    inp = HurwitzInput(config.g, Partition(config.mu), Partition(config.nu),
                       connected=connected)
    count = 0
    for factorization in iter_twisted_factorizations(
            inp, max_points=config.max_points,
            max_branch=config.max_branch_points):
        if connected and not factorization.is_transitive():
            continue
        emit(json.dumps(factorization.to_json()))
        count += 1
    logger.info("%d tuples for %s", count, inp)
    return EXIT_OK


COMMANDS = {"count": cmd_count, "graphs": cmd_graphs, "poly": cmd_poly,
            "wallcross": cmd_wallcross, "btilde": cmd_btilde,
            "tuples": cmd_tuples}


# Parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true",
                        help="Log debug messages to stderr.")
    common.add_argument("--workers", type=int, default=None,
                        help="Number of worker processes (default: 1).")
    common.add_argument("--max-points", type=int, default=None,
                        dest="max_points",
                        help="Cap on 2n for the brute-force engine (default: 12).")  # noqa E501
    common.add_argument("--max-branch", type=int, default=None,
                        dest="max_branch_points",
                        help="Cap on the number of branch points (default: 8).")  # noqa E501
    common.add_argument("--cache", default=None, dest="cache_path",
                        help="Path to a tinydb file caching computed values.")  # noqa E501
    common.add_argument("--config", default=None, dest="config_path",
                        help="Path to the JSON configuration file (default: ./config.json).")  # noqa E501

    profile = argparse.ArgumentParser(add_help=False)
    profile.add_argument("--g", type=int, default=0, help="Genus.")
    profile.add_argument("--mu", required=True,
                         help="Ramification profile over 0, e.g. 2,1,1.")
    profile.add_argument("--nu", required=True,
                         help="Ramification profile over infinity.")

    parser = argparse.ArgumentParser(prog="twisted_hurwitz", description=__doc__,  # noqa E501
                                     formatter_class=argparse.RawDescriptionHelpFormatter)  # noqa E501
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    count = subparsers.add_parser("count", parents=[common, profile],
                                  help="Twisted double Hurwitz number.")
    count.add_argument("--engine", choices=["brute", "tropical", "both"],
                       default=None, help="Counting engine (default: tropical).")  # noqa E501
    count.add_argument("--disconnected", action="store_true",
                       help="Drop the transitivity condition.")
    count.add_argument("--labeled", action="store_true",
                       help="Count with labelled ends.")
    count.add_argument("--format", choices=["text", "json"], default=None,
                       dest="output_format")

    graphs = subparsers.add_parser("graphs", parents=[common, profile],
                                   help="Monodromy graphs with multiplicities.")  # noqa E501
    graphs.add_argument("--format", choices=["text", "json", "dot"],
                        default=None, dest="output_format")
    graphs.add_argument("-o", "--out", default=None,
                        help="Folder for the dot files (default: stdout).")
    graphs.add_argument("--classical", action="store_true",
                        help="Classical 3-valent graphs instead of twisted covers.")  # noqa E501
    graphs.add_argument("--labeled", action="store_true",
                        help="Label the ends.")
    graphs.add_argument("--prune-zero", action="store_true", dest="prune_zero",
                        help="Skip covers of multiplicity 0.")

    poly = subparsers.add_parser("poly", parents=[common],
                                 help="Chamber polynomials of a shape.")
    poly.add_argument("--g", type=int, default=0, help="Genus.")
    poly.add_argument("--shape", required=True, help="Lengths m,n of mu and nu.")  # noqa E501
    poly.add_argument("--chamber", default=None,
                      help="Signature such as +,- (default: every realized chamber).")  # noqa E501
    poly.add_argument("--bound", type=int, default=None, dest="sample_bound",
                      help="Largest coordinate of the sampled points (default: 40).")  # noqa E501
    poly.add_argument("--held-out", type=int, default=None, dest="held_out",
                      help="Extra points checked after interpolation.")
    poly.add_argument("--format", choices=["text", "json"], default=None,
                      dest="output_format")

    wallcross = subparsers.add_parser("wallcross", parents=[common],
                                      help="Genus 0 wall crossing check.")
    wallcross.add_argument("--shape", required=True, help="Lengths m,n.")
    wallcross.add_argument("--wall", required=True,
                           help="Wall written I=1:J=1 with 1-based indices.")
    wallcross.add_argument("--points", type=positive_int, default=3,
                           help="Number of points checked (default: 3).")
    wallcross.add_argument("--literal", action="store_true",
                           help="Keep covers with a 4-valent vertex on the delta end.")  # noqa E501
    wallcross.add_argument("--bound", type=int, default=None,
                           dest="sample_bound")
    wallcross.add_argument("--format", choices=["text", "json"], default=None,
                           dest="output_format")

    btilde = subparsers.add_parser("btilde", parents=[common],
                                   help="Elements of B~_mu.")
    btilde.add_argument("--mu", required=True, help="Partition, e.g. 2,1.")
    btilde.add_argument("--format", choices=["text", "json"], default=None,
                        dest="output_format")

    tuples = subparsers.add_parser("tuples", parents=[common, profile],
                                   help="Twisted factorizations as JSON lines.")  # noqa E501
    tuples.add_argument("--disconnected", action="store_true",
                        help="Keep non transitive tuples.")
    return parser


def settings_from_args(args) -> RunConfig:
    "Merge the command line arguments into the run configuration"
    overrides: Dict = {"subcommand": args.subcommand}
    for key in ["g", "engine", "output_format", "max_points",
                "max_branch_points", "workers", "sample_bound", "held_out",
                "cache_path"]:
        overrides[key] = getattr(args, key, None)
    if getattr(args, "disconnected", False) and overrides["engine"] is None:
        overrides["engine"] = "brute"
    for key in ["mu", "nu"]:
        text = getattr(args, key, None)
        if text is not None:
            overrides[key] = parse_partition(text, key)
    return load_settings(args.config_path, **overrides)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = settings_from_args(args)
    except ValidationError as error:
        print(f"Invalid configuration: {error}", file=sys.stderr)
        return EXIT_USAGE
    except HurwitzError as error:
        print(f"Error: {error}", file=sys.stderr)
        return EXIT_INVALID

    try:
        return COMMANDS[args.subcommand](config, args)
    except CapExceededError as error:
        print(f"Cap exceeded: {error}", file=sys.stderr)
        return EXIT_CAP
    except DegreeBoundViolation as error:
        print(f"Verification failed: {error}", file=sys.stderr)
        return EXIT_FAILED
    except HurwitzError as error:
        print(f"Error: {error}", file=sys.stderr)
        return EXIT_INVALID
