"""
Uniform Normal Form

Exact-arithmetic analysis of rational matrices from the command line: the
semisimplicity test, the Jordan-Chevalley decomposition A = S + N, the Young
diagram of N, and the uniform normal form P⁻¹AP with its factorization of
the characteristic polynomial.

This module is the entry point. It parses matrix files, runs the requested
stages, writes reports and maps engine errors to exit codes.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from config import settings
from scripts.analysis_manager import COMMANDS, RunOptions, run_command
from scripts.corpus import generate_corpus, write_corpus
from scripts.reporting import emit_report, parse_matrix_file
from scripts.utils import (
    NormalFormError,
    ParseError,
    ShapeError,
    VerificationError,
    ensure_directory_exists,
    handle_error,
    logger,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_SHAPE = 4


def exit_code_for(error: Exception) -> int:
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, VerificationError):
        return EXIT_VERIFY
    if isinstance(error, ShapeError):
        return EXIT_SHAPE
    return EXIT_ERROR


def read_input(path: Optional[str]) -> bytes:
    """Read a matrix file, or stdin when no path (or "-") is given."""
    if path is None or path == '-':
        return sys.stdin.buffer.read()
    with open(path, 'rb') as f:
        return f.read()


def write_output(data: bytes, path: Optional[str]) -> None:
    if path is None or path == '-':
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    ensure_directory_exists(os.path.dirname(path))
    with open(path, 'wb') as f:
        f.write(data)


def analyze_bytes(command: str, options: RunOptions, data: bytes, fmt: str) -> Tuple[int, bytes]:
    """
    Parse, run and serialize one input.

    Returns:
        Tuple[int, bytes]: Exit code and report; the report is empty on error
    """
    try:
        matrix = parse_matrix_file(data)
        report = run_command(command, options, matrix)
    except NormalFormError as e:
        handle_error(e, f"'{command}'")
        return exit_code_for(e), b''
    except Exception as e:
        handle_error(e, f"'{command}' (unexpected)")
        return EXIT_ERROR, b''
    code = EXIT_OK if report.verified else EXIT_VERIFY
    return code, emit_report(report, fmt)


def process_file(job: Tuple[str, RunOptions, str, str, str]) -> Tuple[str, int]:
    """Worker for directory inputs: analyze one file and write its report."""
    command, options, source, target, fmt = job
    try:
        code, report = analyze_bytes(command, options, read_input(source), fmt)
        if report:
            write_output(report, target)
    except OSError as e:
        handle_error(e, f"processing {source}")
        return source, EXIT_ERROR
    return source, code


def run_batch(command: str, options: RunOptions, directory: str, output_dir: str, fmt: str, jobs: int) -> int:
    """
    Analyze every *.json file of a directory, one report per file.

    Returns:
        int: The largest exit code over all files
    """
    sources = sorted(Path(directory).glob('*.json'))
    if not sources:
        logger.warning(f"No input files found in {directory}")
        return EXIT_OK
    ensure_directory_exists(output_dir)
    suffix = '.json' if fmt == 'json' else '.txt'
    work = [
        (command, options, str(source), os.path.join(output_dir, source.stem + suffix), fmt)
        for source in sources
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(process_file, work))
    else:
        results = [process_file(job) for job in work]
    for source, code in results:
        if code != EXIT_OK:
            logger.warning(f"{source}: exit code {code}")
    logger.info(f"Analyzed {len(results)} files from {directory}")
    return max(code for _, code in results)


def run_corpus(seed: int, count: int, output_dir: Optional[str]) -> int:
    if not output_dir:
        print("Error: corpus needs --output DIR", file=sys.stderr)
        return EXIT_ERROR
    paths = write_corpus(output_dir, generate_corpus(seed=seed, count=count))
    print(f"Wrote {len(paths)} matrices to {output_dir}", file=sys.stderr)
    return EXIT_OK


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Returns:
        argparse.Namespace: Parsed command line arguments
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="Matrix file or directory of *.json files (default: stdin)")
    common.add_argument("--output", help="Report file, or directory for directory inputs (default: stdout)")
    common.add_argument(
        "--format",
        choices=settings.SUPPORTED_FORMATS,
        default=settings.OUTPUT_FORMAT,
        help=f"Report format (default: {settings.OUTPUT_FORMAT})",
    )
    common.add_argument("--verify", action="store_true", help="Include every exact check in the report")
    common.add_argument(
        "--input-is-nilpotent",
        action="store_true",
        help="nilpotent: treat the input as N itself instead of computing N",
    )
    common.add_argument(
        "--jobs",
        type=int,
        default=settings.BATCH_JOBS,
        help=f"Worker processes for directory inputs (default: {settings.BATCH_JOBS})",
    )

    parser = argparse.ArgumentParser(
        description=f"{settings.PROJECT_NAME} - exact Jordan-Chevalley and uniform normal form engine",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Input files are JSON objects {"matrix": [["1", "1/2"], ["0", "2"]]}.
JSON reports list polynomial coefficients in ascending degree; the pretty
format prints them in descending notation.

Examples:
  python main.py analyze --input data/fixtures/jordan_block_2.json
  python main.py semisimple --input m.json --format pretty
  python main.py jc --input m.json --verify
  python main.py nilpotent --input n.json --input-is-nilpotent
  python main.py uniform --input corpus/ --output reports/ --jobs 4
  python main.py corpus --seed 7 --count 50 --output corpus/

Exit codes: 0 success, 1 other error, 2 parse error,
3 failed verification, 4 shape or dimension error.
        """,
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to execute", required=True)
    descriptions = {
        'analyze': "Run every stage",
        'semisimple': "Square-free part and semisimplicity test",
        'jc': "Jordan-Chevalley decomposition",
        'nilpotent': "Young diagrams of the nilpotent part",
        'uniform': "Uniform normal form",
    }
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=descriptions[command])

    corpus_parser = subparsers.add_parser("corpus", help="Write a seeded corpus of integer matrices")
    corpus_parser.add_argument("--seed", type=int, default=settings.CORPUS_SEED, help="Generator seed")
    corpus_parser.add_argument("--count", type=int, default=settings.CORPUS_SIZE, help="Number of matrices")
    corpus_parser.add_argument("--output", help="Directory for the generated files")

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point.

    Returns:
        int: Process exit code
    """
    args = parse_arguments(argv)
    if args.command == "corpus":
        return run_corpus(args.seed, args.count, args.output)

    options = RunOptions(verify=args.verify, input_is_nilpotent=args.input_is_nilpotent)
    try:
        if args.input and os.path.isdir(args.input):
            if not args.output:
                print("Error: directory inputs need --output DIR", file=sys.stderr)
                return EXIT_ERROR
            return run_batch(args.command, options, args.input, args.output, args.format, args.jobs)
        data = read_input(args.input)
    except OSError as e:
        handle_error(e, 'reading input')
        return EXIT_ERROR

    code, report = analyze_bytes(args.command, options, data, args.format)
    if report:
        write_output(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
