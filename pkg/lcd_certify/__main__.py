"""Console interface for lcd_certify.

Commands:

    - analyze: parameters, hull dimension and weight enumerator of a code.
    - enumerate: every defining vector of an `[n, k, d]` instance.
    - classify: the equivalence classes of an instance or of a vector list.
    - certify: a certificate that no `[n, 5, d]` LCD code exists.
    - table: reproduce one of the published tables and diff it.
    - witness: search for an `[n, 5, d]` LCD code.
"""

import logging
import sys
from argparse import ArgumentParser, Namespace
from collections import Counter
from pathlib import Path
from typing import NoReturn

from lcd_certify.analysis import d_a, d_l, profile
from lcd_certify.certify import CertifyError, FixtureMismatchError
from lcd_certify.certify.certificate import certify_no_lcd, search_lcd_witness
from lcd_certify.certify.tables import TABLES, reproduce_table
from lcd_certify.config import Config, ConfigError, load_config
from lcd_certify.defining_vector import DefiningVectorError, type_signature
from lcd_certify.enumeration import (
    EnumerationError,
    SearchBudgetExceededError,
    SearchMode,
    SearchSpec,
    SolutionSet,
    entry_bounds,
    enumerate_defining_vectors,
)
from lcd_certify.equivalence import EquivalenceError, classify
from lcd_certify.report import (
    OutputFormat,
    VectorInput,
    render_certificate,
    render_classes,
    render_profiles,
    render_solutions,
    render_table,
    render_witness,
)
from lcd_certify.util import LOGGER

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_FIXTURE = 3


class _Parser(ArgumentParser):
    """Argument parser that exits with `EXIT_USAGE` on bad arguments."""

    def error(self, message: str) -> NoReturn:
        """Print the usage and exit."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Verbose output.",
    )
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        help="Output format. Defaults to the output file extension, "
        "then to the command's natural format.",
    )
    common.add_argument(
        "-o",
        "--output",
        type=Path,
        metavar="OUTPUT",
        help="Write the result to this file instead of stdout.",
    )
    common.add_argument(
        "--config",
        type=Path,
        metavar="CONFIG",
        help="A key=value configuration file.",
    )

    budget = common.add_argument_group("Search options")
    budget.add_argument("--seed", type=int, help="Seed for the witness search.")
    budget.add_argument(
        "--node-budget",
        type=int,
        metavar="NODES",
        help="Abort a search after this many nodes.",
    )
    budget.add_argument(
        "--time-budget",
        type=float,
        metavar="SECONDS",
        help="Abort a search after this many seconds.",
    )
    budget.add_argument(
        "--workers",
        type=int,
        help="Worker processes for the enumeration split.",
    )
    budget.add_argument(
        "--cross-check",
        action="store_true",
        default=None,
        help="Re-run enumerations in labeled mode and compare the totals.",
    )
    return common


def _instance_args(parser: ArgumentParser, *, required: bool) -> None:
    instance = parser.add_argument_group("Instance options")
    instance.add_argument("--n", type=int, required=required, help="Code length.")
    instance.add_argument("--k", type=int, default=5, help="Code dimension.")
    instance.add_argument("--d", type=int, help="Minimum distance.")
    instance.add_argument(
        "--max-entry",
        type=int,
        help="Largest column multiplicity. Defaults to n - g(k-1, d).",
    )
    instance.add_argument(
        "--require-zero",
        action="store_true",
        help="Only accept vectors with a zero entry.",
    )
    instance.add_argument(
        "--at-least",
        action="store_true",
        help="Accept minimum distances above d.",
    )


def parse_args(argv: list[str] | None = None) -> Namespace:
    """Returns the parsed command line arguments."""
    parser = _Parser(
        prog="lcd-certify",
        description="Defining-vector tools for binary [n,5] codes and their hulls.",
    )
    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser(
        "analyze",
        parents=[common],
        help="Analyze defining vectors.",
    )
    analyze.add_argument(
        "vector",
        nargs="?",
        metavar="VECTOR",
        help="A defining vector, as digits or a comma separated list.",
    )
    analyze.add_argument(
        "--input",
        type=Path,
        metavar="FILE",
        help="Read one vector per line from this file. Defaults to stdin.",
    )

    enumerate_cmd = commands.add_parser(
        "enumerate",
        parents=[common],
        help="Enumerate the defining vectors of an instance.",
    )
    _instance_args(enumerate_cmd, required=True)
    enumerate_cmd.add_argument(
        "--labeled",
        action="store_true",
        help="Walk every labeled vector instead of the flag-normalized slice.",
    )

    classify_cmd = commands.add_parser(
        "classify",
        parents=[common],
        help="Split an instance or a list of vectors into equivalence classes.",
    )
    _instance_args(classify_cmd, required=False)
    classify_cmd.add_argument(
        "--input",
        type=Path,
        metavar="FILE",
        help="Classify the vectors in this file (one per line) instead of an "
        "instance. Defaults to stdin when --n is not given.",
    )

    certify = commands.add_parser(
        "certify",
        parents=[common],
        help="Certify that no [n,5,d] LCD code exists.",
    )
    certify.add_argument("--n", type=int, required=True, help="Code length.")
    certify.add_argument("--d", type=int, help="Minimum distance. Defaults to d_a(n).")
    certify.add_argument(
        "--required-h",
        type=int,
        default=1,
        help="Hull dimension every stratum should reach.",
    )
    certify.add_argument(
        "--reduce-first",
        action="store_true",
        help="Try a reduction on the forced l_max level before enumerating it.",
    )
    certify.add_argument(
        "--no-witness",
        action="store_true",
        help="Skip the LCD witness search.",
    )

    table = commands.add_parser(
        "table",
        parents=[common],
        help="Reproduce a published table.",
    )
    table.add_argument("--id", type=int, required=True, dest="table_id", help="1..7")
    table.add_argument(
        "--s",
        type=int,
        nargs="+",
        metavar="S",
        help="Values of s to render. Defaults to the least one.",
    )
    table.add_argument(
        "--verify",
        action="store_true",
        help="Table 1 only: certify and witness-search d_l where possible.",
    )

    witness = commands.add_parser(
        "witness",
        parents=[common],
        help="Search for an [n,5,d] LCD code.",
    )
    witness.add_argument("--n", type=int, required=True, help="Code length.")
    witness.add_argument("--d", type=int, help="Minimum distance. Defaults to d_l(n).")

    args = parser.parse_args(argv)
    validate_args(args, parser)
    return args


def validate_args(args: Namespace, parser: ArgumentParser) -> None:
    """Reject argument combinations the commands cannot serve."""
    if args.command == "analyze" and args.vector and args.input:
        parser.error("Give either a VECTOR or --input, not both.")
    if args.command in ("enumerate", "classify") and args.n is not None:
        if args.d is None:
            parser.error("--d is required with --n.")
        if args.n < 0:
            parser.error("--n must be nonnegative.")
    if args.command == "classify" and args.n is not None and args.input:
        parser.error("Give either an instance or --input, not both.")
    if args.command in ("certify", "witness") and args.n < 5:  # noqa: PLR2004
        parser.error("--n must be at least 5 for a binary [n,5] code.")
    if args.command == "table" and args.table_id != 1 and args.table_id not in TABLES:
        parser.error(f"Unknown table {args.table_id}; expected one of 1..7.")
    if args.command == "table" and args.verify and args.table_id != 1:
        parser.error("--verify applies to table 1 only.")
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be positive.")


def output_format(args: Namespace, default: OutputFormat) -> OutputFormat:
    """The requested output format, falling back to the output extension."""
    if args.format is not None:
        return OutputFormat(args.format)
    if args.output is not None:
        detected = OutputFormat.from_file(args.output)
        if detected is not None:
            return detected
        LOGGER.info(
            "Cannot detect the output format from the file extension. "
            "Defaulting to %s.",
            default.value,
        )
    return default


def _search_spec(args: Namespace, config: Config) -> SearchSpec:
    max_entry = args.max_entry or entry_bounds(args.n, args.k, args.d)
    return SearchSpec(
        args.n,
        args.k,
        args.d,
        max_entry=max_entry,
        require_zero_entry=args.require_zero,
        exact_distance=not args.at_least,
        node_budget=config.node_budget,
        time_budget=config.time_budget,
    )


def _input_vectors(args: Namespace) -> VectorInput:
    if getattr(args, "vector", None):
        return VectorInput(args.vector)
    if args.input is not None:
        return VectorInput.from_path(args.input)
    return VectorInput.from_stdin()


def _listed_solutions(args: Namespace) -> SolutionSet:
    vectors = sorted(set(_input_vectors(args).vectors(args.k)))
    if not vectors:
        msg = "No vectors to classify."
        raise DefiningVectorError(msg)
    first = vectors[0]
    profiled = profile(first)
    if any(v.n != first.n for v in vectors):
        msg = "All vectors to classify must have the same length."
        raise DefiningVectorError(msg)
    spec = SearchSpec(first.n, first.k, profiled.d, max_entry=max(1, first.max_entry))
    by_type = Counter(type_signature(v) for v in vectors)
    return SolutionSet(spec, vectors, len(vectors), dict(by_type))


def run_command(args: Namespace) -> tuple[str, int]:  # noqa: PLR0911
    """Execute the command; return the rendered output and exit code."""
    config = load_config(
        args.config,
        seed=args.seed,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        workers=args.workers,
        cross_check=args.cross_check,
    )

    if args.command == "analyze":
        fmt = output_format(args, OutputFormat.MARKDOWN)
        vectors = _input_vectors(args).vectors()
        profiles = [(v, profile(v)) for v in vectors]
        return render_profiles(profiles, fmt), EXIT_OK

    if args.command == "enumerate":
        fmt = output_format(args, OutputFormat.MARKDOWN)
        spec = _search_spec(args, config)
        mode = SearchMode.LABELED if args.labeled else SearchMode.ORBITS
        solutions = enumerate_defining_vectors(
            spec,
            mode=mode,
            workers=config.workers,
            max_labeled=config.max_labeled,
        )
        return render_solutions(solutions, fmt), EXIT_OK

    if args.command == "classify":
        fmt = output_format(args, OutputFormat.MARKDOWN)
        if args.n is not None:
            solutions = enumerate_defining_vectors(
                _search_spec(args, config),
                workers=config.workers,
                max_labeled=config.max_labeled,
            )
        else:
            solutions = _listed_solutions(args)
        return render_classes(classify(solutions), fmt), EXIT_OK

    if args.command == "certify":
        fmt = output_format(args, OutputFormat.JSON)
        certificate = certify_no_lcd(
            args.n,
            args.d,
            required_h=args.required_h,
            exact_hull=not args.reduce_first,
            config=config,
            with_witness=not args.no_witness,
        )
        code = EXIT_OK if certificate.complete else EXIT_BUDGET
        return render_certificate(certificate, fmt), code

    if args.command == "table":
        fmt = output_format(args, OutputFormat.MARKDOWN)
        values = args.s or [None]
        rendered = []
        fatal = False
        for s in values:
            report = reproduce_table(
                args.table_id,
                s,
                config=config,
                verify=args.verify,
            )
            fatal = fatal or report.fatal
            rendered.append(render_table(report, fmt))
        return "\n".join(rendered), EXIT_FIXTURE if fatal else EXIT_OK

    fmt = output_format(args, OutputFormat.JSON)
    d = args.d if args.d is not None else d_l(args.n)
    LOGGER.info("Searching for an LCD [%d,5,%d] code (d_a=%d)", args.n, d, d_a(args.n))
    witness = search_lcd_witness(args.n, d, config=config)
    return render_witness(witness, fmt), EXIT_OK


def main(argv: list[str] | None = None) -> None:
    """Main entry point for the console script."""
    args = parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.INFO)

    try:
        output, code = run_command(args)
    except SearchBudgetExceededError as err:
        LOGGER.error(err)
        sys.exit(EXIT_BUDGET)
    except FixtureMismatchError as err:
        LOGGER.error(err)
        sys.exit(EXIT_FIXTURE)
    except (
        CertifyError,
        ConfigError,
        DefiningVectorError,
        EnumerationError,
        EquivalenceError,
        OSError,
    ) as err:
        LOGGER.error(err)
        sys.exit(EXIT_USAGE)

    if args.output is not None:
        args.output.write_text(output)
    else:
        sys.stdout.write(output)

    if code != EXIT_OK:
        sys.exit(code)


if __name__ == "__main__":
    main()
