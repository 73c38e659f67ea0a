"""The `magnus-towers` command line: expand, linking, mildcheck, cut, poincare and primesearch."""
import argparse
import logging
import sys
import typing

from magnus_towers.pipeline import CommandOutput, Pipeline
from magnus_towers.utils import DomainError, ExitCode, InconclusiveError, InternalData, UsageError

__all__ = ["build_parser", "main"]

_logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="the odd prime p")
    common.add_argument("--d", type=int, help="the number of generators")
    common.add_argument("--trunc", type=int, default=None, help="truncation degree (default: MAGNUS_TRUNCATION, 12)")
    common.add_argument(
        "--series-to",
        "--upto",
        dest="series_to",
        type=int,
        default=None,
        help="highest Poincare series degree (default: MAGNUS_SERIES_TO, 12)",
    )
    common.add_argument("--verbose", "-v", action="store_true", help="log debug messages to standard error")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Returns the argument parser of the command line."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="magnus-towers", description="Magnus expansions, mild pro-p presentations and cutting towers."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    expand = commands.add_parser("expand", parents=[common], help="Magnus expansion of a group word")
    expand.add_argument("word", help="the word, e.g. '[x1,[x2^9,x3]]'")
    expand.add_argument("--hat", action="store_true", help="also print the highest term and the Zassenhaus degree")

    linking = commands.add_parser("linking", parents=[common], help="linking matrix and relation hats of tame primes")
    linking.add_argument("--primes", required=True, help="comma-separated tame primes, in generator order")
    linking.add_argument("--reverse", action="store_true", help="number the generators in the reverse prime order")
    linking.add_argument("--roots", default=None, help="comma-separated primitive roots, one per prime")
    linking.add_argument("--write-document", default=None, metavar="PATH", help="write the presentation document")

    for name, description in (("mildcheck", "certify mildness of a presentation"), ("cut", "cut the tower")):
        command = commands.add_parser(name, parents=[common], help=description)
        command.add_argument("document", nargs="?", default=None, help="presentation document file")
        command.add_argument("--primes", default=None, help="comma-separated tame primes (instead of a document)")
        if name == "mildcheck":
            command.add_argument("--policy", choices=["standard", "literal"], default="standard")
        else:
            command.add_argument("--i0", type=int, default=None, help="repeated letter of a manual cut pair")
            command.add_argument("--j0", type=int, default=None, help="first letter of a manual cut pair")
            command.add_argument("--c", type=int, default=None, help="the split s <= c < t (inferred by default)")
            command.add_argument("--strict", action="store_true", help="only search the guaranteed (i0, j0) grid")

    poincare = commands.add_parser("poincare", parents=[common], help="Poincare series (1 - dt + sum t^n_i)^-1")
    poincare.add_argument("--rel-degrees", default="", help="comma-separated relation degrees")
    poincare.add_argument("--tail-from", type=int, default=None, help="one more relation in every degree >= this")

    search = commands.add_parser("primesearch", parents=[common], help="smallest tame prime meeting residue conditions")
    search.add_argument(
        "--constraints", default="", help="comma-separated residue:<ell>:{yes|no}:{new-mod-old|old-mod-new}"
    )
    search.add_argument("--bound", type=int, default=1000, help="largest candidate (default: 1000)")
    return parser


def _require(value: typing.Optional[int], flag: str) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _read_document(path: typing.Optional[str]) -> typing.Optional[str]:
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as file:
            return file.read()
    except OSError as error:
        raise UsageError(f"can't read the presentation document {path!r}: {error.strerror}") from error


def _run(arguments: argparse.Namespace) -> CommandOutput:
    pipeline = Pipeline(series_to=arguments.series_to)
    command = arguments.command
    _logger.debug("running %s with %s", command, vars(arguments))

    if command == "expand":
        return pipeline.cmd_expand(
            arguments.word, _require(arguments.p, "--p"), _require(arguments.d, "--d"), arguments.trunc, arguments.hat
        )
    elif command == "linking":
        p = _require(arguments.p, "--p")
        output = pipeline.cmd_linking(p, arguments.primes, arguments.reverse, arguments.roots)
        if arguments.write_document:
            document = pipeline.document_from_primes(p, pipeline.ordered_primes(arguments.primes, arguments.reverse))
            try:
                with open(arguments.write_document, "w", encoding="utf-8") as file:
                    file.write(document.render())
            except OSError as error:
                raise UsageError(f"can't write {arguments.write_document!r}: {error.strerror}") from error
        return output
    elif command == "mildcheck":
        return pipeline.cmd_mildcheck(
            _read_document(arguments.document),
            arguments.p,
            arguments.primes,
            trunc=arguments.trunc,
            policy=arguments.policy,
        )
    elif command == "cut":
        return pipeline.cmd_cut(
            _read_document(arguments.document),
            arguments.p,
            arguments.primes,
            trunc=arguments.trunc,
            i0=arguments.i0,
            j0=arguments.j0,
            c=arguments.c,
            strict=arguments.strict,
        )
    elif command == "poincare":
        return pipeline.cmd_poincare(_require(arguments.d, "--d"), arguments.rel_degrees, arguments.tail_from)
    return pipeline.cmd_primesearch(_require(arguments.p, "--p"), arguments.constraints, arguments.bound)


def main(argv: typing.Sequence[str] = None) -> int:
    """
    Runs the command line and returns its exit code.

    Exit codes: 0 success, 1 a checked property is false, 2 usage or parse error, 3 inconclusive under the truncation.

    Args:
        argv (typing.Sequence[str], optional): The arguments, `sys.argv[1:]` by default.

    Returns:
        int: The exit code.
    """
    arguments = build_parser().parse_args(argv)
    try:
        InternalData.reload()
    except UsageError as error:
        print(f"error: {error}", file=sys.stderr)
        return ExitCode.USAGE

    level = logging.DEBUG if arguments.verbose else InternalData.log_level
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT, level=level, force=True)

    try:
        output = _run(arguments)
    except UsageError as error:
        print(f"error: {error}", file=sys.stderr)
        return ExitCode.USAGE
    except DomainError as error:
        print(f"false: {error}", file=sys.stderr)
        return ExitCode.PROPERTY_FALSE
    except InconclusiveError as error:
        print(f"inconclusive: {error}", file=sys.stderr)
        return ExitCode.INCONCLUSIVE

    sys.stdout.write(output.text)
    return output.exit_code
