#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU General Public License for more details.
#
#   You should have received a copy of the GNU General Public License
#   along with this file. If not, see <http://www.gnu.org/licenses/>.
#
#   Copyright © 2024 The weylcode developers
#
"""Command line front end of weylcode.

Input is either JSONL records, one per line, or a whitespace separated
stream of decimal numbers making up one real prefix, read from a file or
stdin. Output is JSONL, written to --out or stdout; experiments write CSV
and JSON reports to a directory.

Exit codes: 0 on success, 1 on usage errors, 2 on rejected input and 3
when an internal invariant breaks.
"""

import argparse
import json
import logging
import os
import sys
from contextlib import ExitStack
from functools import wraps

from weylcode import (
    argparse_version,
    experiments,
    graph,
    rsk,
    skeleton,
    triangular,
    util,
)
from weylcode.common_arg_ncpus import NCpus
from weylcode.prefix import RealPrefix

LOGGER = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INVARIANT = 3


class ArgumentParser(argparse.ArgumentParser):
    """An argument parser that exits with 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def suppress_broken_pipe_msg(function):
    """Stop quietly when the reader of stdout goes away."""

    @wraps(function)
    def wrapper(*args, **kwargs):
        try:
            return function(*args, **kwargs)
        except BrokenPipeError:
            devnull = os.open(os.devnull, os.O_WRONLY)
            os.dup2(devnull, sys.stdout.fileno())
            return 0

    return wrapper


def read_records(stream):
    """Read the input of a subcommand.

    Returns:
        (list[dict]): the JSONL records, or a single {"n": …, "x": […]}
            record when the input is a stream of numbers.
    """
    try:
        text = stream.read()
    except UnicodeDecodeError as error:
        raise util.MalformedRecordError(f"Input is not UTF-8: {error}") from error
    if text.lstrip().startswith("{"):
        records = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as error:
                raise util.MalformedRecordError(f"line {number}: {error}") from error
            if not isinstance(record, dict):
                raise util.MalformedRecordError(f"line {number}: not a JSON object")
            records.append(record)
        return records

    tokens = text.split()
    if not tokens:
        return []
    try:
        values = [float(token) for token in tokens]
    except ValueError as error:
        raise util.MalformedRecordError(str(error)) from error
    return [{"n": len(values), "x": values}]


def open_stream(stack, path, mode, default):
    """Open path within stack, or return default when path is '-'."""
    if path == "-":
        return default
    return stack.enter_context(open(path, mode, encoding="utf-8"))


def write_record(stdout, record):
    stdout.write(json.dumps(record, separators=(",", ":")) + "\n")


def _prefix(record):
    return RealPrefix.from_record(record)


def encode(args, stdin, stdout):
    for record in read_records(stdin):
        x = _prefix(record)
        if args.n is not None:
            x = x.head(args.n)
        write_record(stdout, triangular.encode_prefix(x).to_record())


def transfer(args, stdin, stdout):
    for record in read_records(stdin):
        if "t" in record:
            value, step = triangular.TriCode.from_record(record), triangular.transfer
        elif "k" in record:
            value, step = skeleton.RankVector.from_record(record), skeleton.translation
        else:
            raise util.MalformedRecordError(f"Expected a code or ranks: {record}")
        for _ in range(args.steps):
            value = step(value)
        write_record(stdout, value.to_record())


def reconstruct(args, stdin, stdout):
    estimate = {
        "ranks": triangular.reconstruct_prefix,
        "transfer": triangular.reconstruct_by_transfer,
    }[args.via]
    for record in read_records(stdin):
        values = estimate(triangular.TriCode.from_record(record), args.m)
        write_record(stdout, {"n": len(values), "x": list(values)})


def rsk_command(args, stdin, stdout):
    for record in read_records(stdin):
        if args.inverse:
            try:
                p, q = record["P"], record["Q"]
            except (KeyError, TypeError) as error:
                raise util.MalformedRecordError(
                    f"Expected P and Q: {record}"
                ) from error
            word = rsk.rsk_inverse(
                rsk.RealTableau.from_record(p), rsk.StandardTableau.from_record(q)
            )
            write_record(stdout, word.to_record())
        elif args.normalized:
            write_record(stdout, rsk.normalized_p(_prefix(record)).to_record())
        else:
            p, q = rsk.rsk_word(_prefix(record))
            write_record(stdout, {"P": p.to_record(), "Q": q.to_record()})


def promote(args, stdin, stdout):
    for record in read_records(stdin):
        tableau = rsk.StandardTableau.from_record(record)
        for _ in range(args.steps):
            tableau = rsk.promotion(tableau)
        write_record(stdout, tableau.to_record())


def graph_transfer(args, stdin, stdout):
    for record in read_records(stdin):
        if "path" in record:
            depth = len(record["path"]) if isinstance(record["path"], list) else 0
            path = graph.GraphPath.from_record(record, graph.YoungGraph(depth))
        else:
            path = graph.tableau_to_path(rsk.StandardTableau.from_record(record))
        young = graph.YoungGraph(len(path))
        for _ in range(args.steps):
            path = graph.graph_transfer(young, path)
        if "path" in record:
            write_record(stdout, path.to_record())
        else:
            write_record(stdout, graph.path_to_tableau(path).to_record())


def sample(args, stdin, stdout):
    if args.measure == "plancherel":
        shapes = rsk.sample_shapes(args.n, args.samples, args.seed)
        for shape, count in sorted(shapes.items(), reverse=True):
            write_record(stdout, {"n": args.n, "shape": list(shape), "count": count})
    else:
        for row in triangular.sample_uniform_tricodes(args.n, args.samples, args.seed):
            write_record(stdout, triangular.TriCode(tuple(row)).to_record())


def tree(args, stdin, stdout):
    for record in skeleton.tree_edges(args.n):
        write_record(stdout, record)


def _given(value, default):
    return default if value is None else value


def experiment(args, stdin, stdout):
    name = args.name
    LOGGER.info("Running %s with seed %d", name, args.seed)
    if name == "distinguishability":
        report = experiments.run_distinguishability(
            _given(args.n, 1000), _given(args.trials, 10), args.seed, args.ncpus
        )
    elif name == "uniformity":
        report = experiments.run_uniformity(
            _given(args.n, 20), _given(args.samples, 10000), args.seed
        )
    elif name == "entropy":
        report = experiments.run_entropy_curve(_given(args.n, 100), seed=args.seed)
    elif name == "rsk-separation":
        report = experiments.run_rsk_separation(
            _given(args.n, 50), _given(args.trials, 100), args.seed, args.ncpus
        )
    else:
        report = experiments.run_p_stabilization(
            _given(args.n, 1000), _given(args.trials, 10), args.seed, args.ncpus
        )
    for path in report.write(args.out):
        stdout.write(f"{path}\n")


def parse_options(argv=None):
    parser = ArgumentParser(
        parents=[argparse_version.parser],
        description="Encode Bernoulli sequences by sequential ranks, "
        "transfer them and run the experiments.",
    )
    input_parent = ArgumentParser(add_help=False)
    input_parent.add_argument(
        "input", nargs="?", default="-", help="Input file, '-' for stdin. Default: -"
    )
    output_parent = ArgumentParser(add_help=False)
    output_parent.add_argument(
        "--out",
        dest="output",
        default="-",
        help="Output file, '-' for stdout. Default: -",
    )
    streaming = [input_parent, output_parent]

    subparsers = parser.add_subparsers(
        dest="command",
        required=True,
        help="(try e.g. 'encode -h' for help with that subcommand)",
    )

    encode_parser = subparsers.add_parser(
        "encode", parents=streaming, help="Encode real prefixes as codes t_1..t_n."
    )
    encode_parser.add_argument(
        "--n", type=int, help="Encode only the first N values."
    )
    encode_parser.set_defaults(func=encode)

    transfer_parser = subparsers.add_parser(
        "transfer",
        parents=streaming,
        help="Apply the transfer to code records, or the translation to "
        "rank records.",
    )
    transfer_parser.add_argument("--steps", type=int, default=1)
    transfer_parser.set_defaults(func=transfer)

    reconstruct_parser = subparsers.add_parser(
        "reconstruct",
        parents=streaming,
        help="Estimate the first M coordinates from codes.",
    )
    reconstruct_parser.add_argument("--m", type=int, required=True)
    reconstruct_parser.add_argument(
        "--via",
        choices=["ranks", "transfer"],
        default="ranks",
        help="Plotting positions of the ranks, or d_n/n of the transferred "
        "codes. Default: ranks",
    )
    reconstruct_parser.set_defaults(func=reconstruct)

    rsk_parser = subparsers.add_parser(
        "rsk",
        parents=streaming,
        help="Insertion and recording tableaux of real prefixes.",
    )
    rsk_mode = rsk_parser.add_mutually_exclusive_group()
    rsk_mode.add_argument(
        "--inverse", action="store_true", help="Read P and Q, write the prefix."
    )
    rsk_mode.add_argument(
        "--normalized",
        action="store_true",
        help="Write the P-tableau of the normalized ranks.",
    )
    rsk_parser.set_defaults(func=rsk_command)

    promote_parser = subparsers.add_parser(
        "promote", parents=streaming, help="Apply promotion to standard tableaux."
    )
    promote_parser.add_argument("--steps", type=int, default=1)
    promote_parser.set_defaults(func=promote)

    graph_parser = subparsers.add_parser(
        "graph-transfer",
        parents=streaming,
        help="Apply the 2-interval transfer to Young graph paths or tableaux.",
    )
    graph_parser.add_argument("--steps", type=int, default=1)
    graph_parser.set_defaults(func=graph_transfer)

    sample_parser = subparsers.add_parser(
        "sample",
        parents=[output_parent],
        help="Draw codes from μ, or Plancherel shapes.",
    )
    sample_parser.add_argument("--seed", type=int, required=True)
    sample_parser.add_argument("--n", type=int, required=True)
    sample_parser.add_argument("--samples", type=int, default=1)
    sample_parser.add_argument(
        "--measure", choices=["uniform", "plancherel"], default="uniform"
    )
    sample_parser.set_defaults(func=sample)

    tree_parser = subparsers.add_parser(
        "tree",
        parents=[output_parent],
        help="Write the edges of the permutation tree up to level N.",
    )
    tree_parser.add_argument("--n", type=int, required=True)
    tree_parser.set_defaults(func=tree)

    experiment_parser = subparsers.add_parser(
        "experiment", help="Run a seeded experiment and write its reports."
    )
    experiment_parser.add_argument(
        "name",
        choices=[
            "distinguishability",
            "uniformity",
            "entropy",
            "rsk-separation",
            "p-stabilization",
        ],
    )
    experiment_parser.add_argument("--seed", type=int, required=True)
    experiment_parser.add_argument(
        "--n", type=int, help="Prefix length N, code length n or n_max."
    )
    experiment_parser.add_argument(
        "--trials", type=int, help="Trials, or pairs for rsk-separation."
    )
    experiment_parser.add_argument(
        "--samples", type=int, help="Samples for uniformity."
    )
    experiment_parser.add_argument("--ncpus", action=NCpus)
    experiment_parser.add_argument(
        "--out",
        default=os.getenv("WEYLCODE_OUT", "."),
        help="Report directory. Defaults to WEYLCODE_OUT, or '.'",
    )
    experiment_parser.set_defaults(func=experiment)

    return parser.parse_args(argv)


def run(argv=None, stdin=None, stdout=None):
    """Run one subcommand.

    Args:
        argv (list[str]): the arguments, sys.argv[1:] when None.
        stdin (io.TextIOBase): input stream, sys.stdin when None.
        stdout (io.TextIOBase): output stream, sys.stdout when None.

    Returns:
        (int): the exit code.
    """
    try:
        args = parse_options(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_USAGE

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    with ExitStack() as stack:
        try:
            source = open_stream(
                stack, getattr(args, "input", "-"), "r", stdin or sys.stdin
            )
            target = open_stream(
                stack, getattr(args, "output", "-"), "w", stdout or sys.stdout
            )
        except OSError as error:
            print(f"error: {error}", file=sys.stderr)
            return EXIT_USAGE

        try:
            args.func(args, source, target)
        except util.DataError as error:
            print(f"error: {error}", file=sys.stderr)
            return EXIT_DATA
        except util.InvariantViolationError as error:
            print(f"error: internal invariant violated: {error}", file=sys.stderr)
            return EXIT_INVARIANT
    return 0


@suppress_broken_pipe_msg
def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
