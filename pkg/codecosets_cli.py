#!/usr/bin/env python3
"""
Codecosets Command Line Interface

This tool reads linear-code definition files and computes canonical-form
tables, reduced bases, decodings, equivalence verdicts and statistics,
printing one JSON document on stdout. Logging goes to stderr.
"""

import argparse
import logging
import sys
import time
from typing import Any, Dict, Optional, Sequence, Tuple

from config import (
    DECODE_METHODS,
    DEFAULT_ORDER,
    DEFAULT_THREADS,
    ORDER_KINDS,
    RunConfig,
    default_caps,
)
from decode import decode_all, decode_binary, decode_matphi, summarize
from equiv import (
    LevelStats,
    bases_equivalent,
    find_permutation,
    level_stats,
    matphi_equivalent,
    verify_permutation,
)
from errors import CharacteristicError, CodeCosetsError, ParseError, UsageError
from excel_handler import ExcelHandler, level_stats_frame, weight_frame
from linear_code import Code, error_capability, load_code, minimum_distance, weight_distribution
from matphi import build_matphi
from monomial import AdmissibleOrder, standardize
from permutation import Permutation
from rbasis import build_reduced_basis, reduce_traced
from utils import parse_int_list, parse_vector, to_json, write_json

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_DOMAIN_ERROR = 2


class JsonArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises UsageError instead of printing usage."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-parser per subcommand."""
    caps = default_caps()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--order',
        choices=ORDER_KINDS,
        default=DEFAULT_ORDER,
        help=f'Admissible order breaking ties inside a level (default: {DEFAULT_ORDER})'
    )
    common.add_argument(
        '--variable-order',
        help='Variables from the smallest up, a permutation of 1..nm (default: natural)'
    )
    common.add_argument('-o', '--output', help='Write the JSON document to this file')
    common.add_argument(
        '--max-forms',
        type=int,
        default=caps["max_forms"],
        help=f'Cap on the number of canonical forms (default: {caps["max_forms"]})'
    )
    common.add_argument(
        '--max-codewords',
        type=int,
        default=caps["max_codewords"],
        help=f'Cap on enumerated codewords or vectors (default: {caps["max_codewords"]})'
    )
    common.add_argument('--debug', action='store_true', help='Enable debug logging')

    parser = JsonArgumentParser(
        prog='codecosets',
        description='Canonical forms, reduced bases, decoding and equivalence of linear codes'
    )
    sub = parser.add_subparsers(dest='subcommand', required=True)

    p = sub.add_parser('matphi', parents=[common], help='Canonical forms and the phi table')
    p.add_argument('code', help='Code definition file')
    p.add_argument('--xlsx', help='Also write the table to this workbook')

    p = sub.add_parser('rbasis', parents=[common], help='Canonical forms and the reduced basis')
    p.add_argument('code', help='Code definition file')
    p.add_argument('--xlsx', help='Also write N and G to this workbook')

    p = sub.add_parser('decode', parents=[common], help='Decode received vectors')
    p.add_argument('code', help='Code definition file')
    p.add_argument(
        '--vector',
        action='append',
        required=True,
        help='Received vector, e.g. 1,0,1 or 0,1;1,1 over GF(p^m); repeatable'
    )
    p.add_argument('--method', choices=DECODE_METHODS, default='auto', help='Decoder (default: auto)')
    p.add_argument('--details', action='store_true', help='Include the reduction trace (binary decoder)')

    p = sub.add_parser('decode-all', parents=[common], help='Decode every vector of F_q^n')
    p.add_argument('code', help='Code definition file')
    p.add_argument('--method', choices=DECODE_METHODS, default='auto', help='Decoder (default: auto)')
    p.add_argument(
        '-t', '--threads',
        type=int,
        default=DEFAULT_THREADS,
        help=f'Number of decoding threads (default: {DEFAULT_THREADS})'
    )

    p = sub.add_parser('equiv', parents=[common], help='Permutation equivalence of two codes')
    p.add_argument('code', nargs=2, help='Two code definition files')
    p.add_argument('--sigma', help='Check this permutation instead of searching, cycle or list notation')
    p.add_argument(
        '--max-search-length',
        type=int,
        default=caps["max_search_length"],
        help=f'Largest length searched (default: {caps["max_search_length"]})'
    )

    p = sub.add_parser('stats', parents=[common], help='Heads/Irreds level statistics of the reduced basis')
    p.add_argument('code', help='Code definition file')
    p.add_argument('--level', type=int, action='append', help='Level to report; repeatable (default: all)')
    p.add_argument('--table', action='store_true', help='Print a text table instead of JSON')
    p.add_argument('--xlsx', help='Also write the statistics to this workbook')

    p = sub.add_parser('weights', parents=[common], help='Weight distribution, minimum distance and t')
    p.add_argument('code', help='Code definition file')
    p.add_argument('--table', action='store_true', help='Print a text table instead of JSON')
    p.add_argument('--xlsx', help='Also write the distribution to this workbook')

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Turn parsed arguments into a RunConfig.

    Args:
        args: Parsed command line

    Returns:
        The run configuration
    """
    inputs = args.code if isinstance(args.code, list) else [args.code]
    variable_order = parse_int_list(args.variable_order) if args.variable_order else None
    return RunConfig(
        subcommand=args.subcommand,
        inputs=inputs,
        order=args.order,
        variable_order=variable_order,
        vectors=list(getattr(args, 'vector', None) or []),
        sigma=getattr(args, 'sigma', None),
        method=getattr(args, 'method', 'auto'),
        levels=list(getattr(args, 'level', None) or []),
        output=args.output,
        xlsx=getattr(args, 'xlsx', None),
        table=getattr(args, 'table', False),
        details=getattr(args, 'details', False),
        max_forms=args.max_forms,
        max_codewords=args.max_codewords,
        max_search_length=getattr(args, 'max_search_length', default_caps()["max_search_length"]),
        threads=getattr(args, 'threads', DEFAULT_THREADS),
        debug=args.debug,
    )


def resolve_admissible_order(config: RunConfig, code: Code) -> AdmissibleOrder:
    if config.variable_order is None:
        return AdmissibleOrder.natural(config.order, code.nvars)
    if len(config.variable_order) != code.nvars:
        raise ParseError(
            f"Variable order lists {len(config.variable_order)} variables, code has {code.nvars}"
        )
    return AdmissibleOrder(config.order, tuple(config.variable_order))


def _code_header(code: Code) -> Dict[str, Any]:
    return {"name": code.name, "p": code.spec.p, "m": code.spec.m, "n": code.n, "k": code.k}


def _choose_method(config: RunConfig, code: Code) -> str:
    if config.method == 'auto':
        return 'binary' if code.spec.is_binary else 'matphi'
    if config.method == 'binary' and not code.spec.is_binary:
        raise CharacteristicError(f"Reduced-basis decoding needs a binary code, got {code.spec}")
    return config.method


def _decoder(config: RunConfig, code: Code, order: AdmissibleOrder):
    method = _choose_method(config, code)
    if method == 'binary':
        basis = build_reduced_basis(code, order, config.max_forms, config.max_codewords)
        return method, basis, (lambda v: decode_binary(basis, code, v))
    table = build_matphi(code, order, config.max_forms, config.max_codewords)
    return method, table, (lambda v: decode_matphi(table, code, v))


def _run_matphi(config: RunConfig, code: Code, order: AdmissibleOrder) -> Dict[str, Any]:
    table = build_matphi(code, order, config.max_forms, config.max_codewords)
    if config.xlsx:
        handler = ExcelHandler(config.xlsx)
        handler.add_matphi(table)
        handler.save()
    return {"code": _code_header(code), **table.to_dict()}


def _run_rbasis(config: RunConfig, code: Code, order: AdmissibleOrder) -> Dict[str, Any]:
    basis = build_reduced_basis(code, order, config.max_forms, config.max_codewords)
    if config.xlsx:
        handler = ExcelHandler(config.xlsx)
        handler.add_reduced_basis(basis)
        handler.save()
    return {"code": _code_header(code), **basis.to_dict()}


def _run_decode(config: RunConfig, code: Code, order: AdmissibleOrder) -> Dict[str, Any]:
    vectors = [parse_vector(text, code.spec, code.n) for text in config.vectors]
    method, structure, decode_fn = _decoder(config, code, order)

    results = []
    for v in vectors:
        entry = {"received": v.to_json(), **decode_fn(v).to_dict()}
        # Traces are only defined for the reduced basis
        if config.details and method == 'binary':
            entry["reduction"] = reduce_traced(structure, standardize(v)).to_dict()
        results.append(entry)
    return {"code": _code_header(code), "method": method, "t": structure.t, "results": results}


def _run_decode_all(config: RunConfig, code: Code, order: AdmissibleOrder) -> Dict[str, Any]:
    method, structure, decode_fn = _decoder(config, code, order)
    results = decode_all(decode_fn, code, config.threads, config.max_codewords, progress=True)
    return {"code": _code_header(code), "method": method, "t": structure.t, **summarize(results)}


def _run_equiv(config: RunConfig, c1: Code, c2: Code, order: AdmissibleOrder) -> Dict[str, Any]:
    header = {"codes": [_code_header(c1), _code_header(c2)]}
    if not config.sigma:
        verdict = find_permutation(
            c1, c2, order,
            max_length=config.max_search_length,
            max_codewords=config.max_codewords,
            max_forms=config.max_forms,
        )
        return {**header, **verdict.to_dict()}

    # Given sigma: the codeword check decides equivalence
    sigma = Permutation.parse(config.sigma, c1.n)
    checks = {"codewords": verify_permutation(c1, c2, sigma)}
    t1 = build_matphi(c1, order, config.max_forms, config.max_codewords)
    t2 = build_matphi(c2, order, config.max_forms, config.max_codewords)
    checks["matphi"] = matphi_equivalent(sigma, t1, t2)
    if c1.spec.is_binary:
        g1 = build_reduced_basis(c1, order, config.max_forms, config.max_codewords)
        g2 = build_reduced_basis(c2, order, config.max_forms, config.max_codewords)
        checks["reduced_basis"] = bases_equivalent(g1, g2, sigma)
    return {
        **header,
        "sigma": sigma.to_list(),
        "cycles": sigma.cycle_notation(),
        "equivalent": checks["codewords"],
        "checks": checks,
    }


def _run_stats(config: RunConfig, code: Code, order: AdmissibleOrder) -> Dict[str, Any]:
    basis = build_reduced_basis(code, order, config.max_forms, config.max_codewords)
    levels = config.levels or list(basis.levels)
    stats = [level_stats(basis, L) for L in levels]
    if config.xlsx:
        handler = ExcelHandler(config.xlsx)
        handler.add_level_stats(stats)
        handler.save()
    return {"code": _code_header(code), "t": basis.t, "levels": [s.to_dict() for s in stats]}


def _run_weights(config: RunConfig, code: Code) -> Dict[str, Any]:
    distribution = weight_distribution(code, config.max_codewords)
    if config.xlsx:
        handler = ExcelHandler(config.xlsx)
        handler.add_weight_distribution(distribution)
        handler.save()
    return {
        "code": _code_header(code),
        "weight_distribution": distribution,
        "minimum_distance": minimum_distance(code, config.max_codewords),
        "t": error_capability(code, config.max_codewords),
    }


def run(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """
    Execute one subcommand.

    Args:
        config: The run configuration

    Returns:
        Tuple of (exit status, JSON-ready document)
    """
    # Configuration problems surface as ParseError
    try:
        config.validate()
    except CodeCosetsError:
        raise
    except ValueError as e:
        raise ParseError(f"Invalid configuration: {e}") from e

    logger.debug(f"Configuration: {config}")
    started = time.time()
    # The admissible order is sized by the first code
    codes = [load_code(path) for path in config.inputs]
    order = resolve_admissible_order(config, codes[0])

    if config.subcommand == 'matphi':
        document = _run_matphi(config, codes[0], order)
    elif config.subcommand == 'rbasis':
        document = _run_rbasis(config, codes[0], order)
    elif config.subcommand == 'decode':
        document = _run_decode(config, codes[0], order)
    elif config.subcommand == 'decode-all':
        document = _run_decode_all(config, codes[0], order)
    elif config.subcommand == 'equiv':
        document = _run_equiv(config, codes[0], codes[1], order)
    elif config.subcommand == 'stats':
        document = _run_stats(config, codes[0], order)
    else:
        document = _run_weights(config, codes[0])

    logger.info(f"{config.subcommand} completed in {time.time() - started:.2f} seconds")
    return EXIT_OK, document


def render_table(config: RunConfig, document: Dict[str, Any]) -> str:
    """Text table for the stats and weights documents."""
    if config.subcommand == 'stats':
        stats = [LevelStats(s["level"], tuple(s["heads"]), tuple(s["irreds"])) for s in document["levels"]]
        frame = level_stats_frame(stats)
    else:
        frame = weight_frame(document["weight_distribution"])
    return frame.to_string() + "\n"


def configure_logging(debug: bool) -> None:
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(logging.DEBUG if debug else logging.INFO)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point of the application.

    Args:
        argv: Command line without the program name, sys.argv[1:] by default

    Returns:
        Exit status: 0 on success, 2 on a usage or domain error, 1 otherwise
    """
    config: Optional[RunConfig] = None
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.debug)
        config = config_from_args(args)
        status, document = run(config)
    except CodeCosetsError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stdout.write(to_json(e.to_dict()))
        return EXIT_DOMAIN_ERROR
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        sys.stdout.write(to_json({"error": {"type": type(e).__name__, "message": str(e)}}))
        return EXIT_UNEXPECTED

    # Text tables replace JSON for stats and weights
    if config.table and config.subcommand in ('stats', 'weights'):
        sys.stdout.write(render_table(config, document))
        return status

    text = write_json(document, config.output)
    if not config.output:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
