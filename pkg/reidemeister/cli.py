"""Command-line front end."""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import random
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from .const import (
    ATTR_CASES,
    ATTR_ERROR,
    ATTR_LEVEL,
    ATTR_MISMATCHES,
    ATTR_NUMBER,
    ATTR_REPRESENTATIVES,
    ATTR_STATUS,
    ATTR_WITNESS,
    ATTR_WITNESS_TEXT,
    DEFAULT_MAX_ENUM,
    DEFAULT_THREADS,
    EXIT_INTERNAL_ERROR,
    EXIT_INVALID_INPUT,
    EXIT_IO_ERROR,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_SYNTAX_ERROR,
    STATUS_CONJUGATE,
    STATUS_ERROR,
    STATUS_FAIL,
    STATUS_FINITE,
    STATUS_INFINITE,
    STATUS_NOT_CONJUGATE,
    STATUS_PASS,
    VERSION,
)
from .exceptions import (
    EnumerationLimitError,
    InfiniteCoincidenceGroupError,
    InfiniteGroupError,
    ProblemFileError,
    ReidemeisterError,
    WitnessVerificationError,
)
from .oracle import compare, random_endomorphisms
from .pcp import PcpElement
from .pcp_subgroups import derived_length
from .problem_file import KIND_IO, KIND_SYNTAX, ProblemFile, example_text, parse
from .twisted import (
    EndoPair,
    Finite,
    SolverConfig,
    Witness,
    rep_twist_conj,
    reps_reid_classes,
)

_LOGGER = logging.getLogger(__name__)

_PROBLEM_FILE_EXIT = {KIND_IO: EXIT_IO_ERROR, KIND_SYNTAX: EXIT_SYNTAX_ERROR}


def _word(element: PcpElement) -> list[list[int]]:
    return [[generator + 1, exponent] for generator, exponent in element.to_word()]


def _emit(args: argparse.Namespace, record: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        max_enum=args.max_enum,
        threads=args.threads,
        check_morphisms=not args.skip_hom_check,
    )


def _load(args: argparse.Namespace) -> ProblemFile:
    return parse(args.file, check_morphisms=not args.skip_hom_check)


def cmd_conj(args: argparse.Namespace) -> int:
    """Decide whether g1 and g2 are twisted conjugate."""
    problem = _load(args)
    pair = problem.pair(args.phi, args.psi)
    g1, g2 = problem.element(args.g1), problem.element(args.g2)
    result = rep_twist_conj(pair, g1, g2, _config(args))
    if isinstance(result, Witness):
        _LOGGER.info("%s and %s are twisted conjugate by %s", g1, g2, result.element)
        _emit(
            args,
            {
                ATTR_STATUS: STATUS_CONJUGATE,
                ATTR_WITNESS: _word(result.element),
                ATTR_WITNESS_TEXT: str(result.element),
            },
            str(result.element),
        )
    else:
        _LOGGER.info("%s and %s are not twisted conjugate", g1, g2)
        _emit(args, {ATTR_STATUS: STATUS_NOT_CONJUGATE}, STATUS_NOT_CONJUGATE)
    return EXIT_OK


def _classes(args: argparse.Namespace) -> Finite | None:
    problem = _load(args)
    result = reps_reid_classes(problem.pair(args.phi, args.psi), _config(args))
    _LOGGER.info("Reidemeister number %s", result.number)
    return result if isinstance(result, Finite) else None


def cmd_classes(args: argparse.Namespace) -> int:
    """Print one representative per Reidemeister class."""
    result = _classes(args)
    if result is None:
        _emit(args, {ATTR_STATUS: STATUS_INFINITE}, STATUS_INFINITE)
        return EXIT_OK
    _emit(
        args,
        {
            ATTR_STATUS: STATUS_FINITE,
            ATTR_NUMBER: result.number,
            ATTR_REPRESENTATIVES: [_word(x) for x in result.representatives],
        },
        "\n".join(str(x) for x in result.representatives),
    )
    return EXIT_OK


def cmd_number(args: argparse.Namespace) -> int:
    """Print the Reidemeister number."""
    result = _classes(args)
    if result is None:
        _emit(args, {ATTR_STATUS: STATUS_INFINITE, ATTR_NUMBER: None}, "infinity")
    else:
        _emit(
            args,
            {ATTR_STATUS: STATUS_FINITE, ATTR_NUMBER: result.number},
            str(result.number),
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Compare the algorithms with brute force on the file's group."""
    problem = _load(args)
    presentation = problem.presentation
    if not presentation.is_finite():
        raise InfiniteGroupError("cannot verify on an infinite group")
    config = _config(args)
    rng = random.Random(args.seed)

    pairs: list[tuple[str, EndoPair]] = [
        (f"{phi}/{psi}", problem.pair(phi, psi))
        for phi, psi in itertools.product(problem.endomorphisms, repeat=2)
    ]
    if args.trials:
        generated = random_endomorphisms(presentation, rng)
        pairs.extend(
            (
                f"random{number}",
                EndoPair(rng.choice(generated), rng.choice(generated)),
            )
            for number in range(args.trials)
        )

    cases = []
    lines = []
    failed = False
    for name, pair in pairs:
        report = compare(pair, samples=args.samples, rng=rng, config=config)
        failed = failed or not report.ok
        status = STATUS_PASS if report.ok else STATUS_FAIL
        cases.append(
            {
                "name": name,
                ATTR_STATUS: status,
                ATTR_NUMBER: report.brute_count,
                ATTR_MISMATCHES: report.mismatches,
            }
        )
        lines.append(f"{name}: {status} ({report.brute_count} classes)")
    _emit(
        args,
        {ATTR_STATUS: STATUS_FAIL if failed else STATUS_PASS, ATTR_CASES: cases},
        "\n".join(lines) if lines else "no endomorphism pairs to verify",
    )
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    """Validate a problem file and summarize its presentation."""
    problem = _load(args)
    presentation = problem.presentation
    record = {
        "generators": presentation.count,
        "relative_orders": list(presentation.relative_orders),
        "hirsch_length": presentation.hirsch_length(),
        "derived_length": derived_length(presentation),
        "endomorphisms": sorted(problem.endomorphisms),
    }
    text = "\n".join(
        [
            f"generators: {record['generators']}",
            f"relative orders: {record['relative_orders']}",
            f"Hirsch length: {record['hirsch_length']}",
            f"derived length: {record['derived_length']}",
            f"endomorphisms: {', '.join(record['endomorphisms']) or '-'}",
        ]
    )
    _emit(args, {ATTR_STATUS: STATUS_PASS, **record}, text)
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    """Write the shipped worked example."""
    text = example_text()
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as err:
            raise ProblemFileError(
                err.strerror or str(err), KIND_IO, args.output
            ) from err
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--skip-hom-check",
        action="store_true",
        help="do not verify that the maps are endomorphisms",
    )
    common.add_argument(
        "--max-enum",
        type=_positive,
        default=DEFAULT_MAX_ENUM,
        help="largest finite quotient to enumerate",
    )
    common.add_argument(
        "--threads",
        type=_positive,
        default=DEFAULT_THREADS,
        help="worker threads for the class enumeration",
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v info, -vv debug"
    )

    parser = argparse.ArgumentParser(
        prog="reidemeister",
        description="Twisted conjugacy and Reidemeister classes of polycyclic groups.",
    )
    parser.add_argument("--version", action="version", version=VERSION)
    commands = parser.add_subparsers(dest="command", required=True)

    def add(
        name: str, handler: Callable[[argparse.Namespace], int], help_text: str
    ) -> argparse.ArgumentParser:
        command = commands.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
        return command

    conj = add("conj", cmd_conj, "decide twisted conjugacy of two elements")
    conj.add_argument("file")
    conj.add_argument("phi")
    conj.add_argument("psi")
    conj.add_argument("g1", help="element name or JSON word")
    conj.add_argument("g2", help="element name or JSON word")

    for name, handler, help_text in (
        ("classes", cmd_classes, "list Reidemeister class representatives"),
        ("number", cmd_number, "print the Reidemeister number"),
    ):
        command = add(name, handler, help_text)
        command.add_argument("file")
        command.add_argument("phi")
        command.add_argument("psi")

    verify = add("verify", cmd_verify, "compare with brute force on a finite group")
    verify.add_argument("file")
    verify.add_argument(
        "--trials", type=int, default=0, help="extra random endomorphism pairs"
    )
    verify.add_argument(
        "--samples", type=int, default=20, help="conjugacy queries per pair"
    )
    verify.add_argument("--seed", type=int, default=0)

    check = add("check", cmd_check, "validate a problem file")
    check.add_argument("file")

    example = add("example", cmd_example, "write the worked example problem file")
    example.add_argument("-o", "--output")
    return parser


def _fail(args: argparse.Namespace, code: int, error: Exception, **extra: Any) -> int:
    _LOGGER.error("%s", error)
    record = {ATTR_STATUS: STATUS_ERROR, ATTR_ERROR: str(error), **extra}
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"error: {error}", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.handler(args)
    except InfiniteCoincidenceGroupError as err:
        return _fail(args, EXIT_PRECONDITION, err, **{ATTR_LEVEL: err.level})
    except EnumerationLimitError as err:
        return _fail(args, EXIT_PRECONDITION, err)
    except ProblemFileError as err:
        code = _PROBLEM_FILE_EXIT.get(err.kind, EXIT_INVALID_INPUT)
        return _fail(args, code, err, kind=err.kind)
    except WitnessVerificationError as err:
        return _fail(args, EXIT_INTERNAL_ERROR, err)
    except ReidemeisterError as err:
        return _fail(args, EXIT_INVALID_INPUT, err)
