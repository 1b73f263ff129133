"""Command-line interface

stdout carries data only; diagnostics go to stderr through the shared logger
and the exit status reports success or the error class.
"""
import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, TextIO

from app import __version__
from app.core.config import settings
from app.core.exceptions import InvalidOrderError, ParseError, SpectraError, VerificationFailedError
from app.core.logging import logger, set_log_level
from app.services.charpoly_service import CharpolyMethod, get_charpoly_service
from app.services.digraph_service import Digraph, format_digraph_text, parse_digraph_text
from app.services.enumeration_service import get_enumeration_service
from app.services.family_service import (
    build_family,
    closed_form_charpoly,
    enumerate_bicyclic_params,
    is_family_spec,
    parse_family_spec,
)
from app.services.perron_service import Ordering, get_perron_service
from app.services.polynomial import Polynomial
from app.services.subdigraph_service import find_theta_or_infty_subdigraph
from app.services.verification_service import CLAIMS, parse_n_range, run_claims


RELATION_SYMBOLS = {Ordering.LESS: "<", Ordering.EQUAL: "=", Ordering.GREATER: ">"}


def load_digraph(source: str) -> Digraph:
    """Family spec such as "theta:0,1,1", or a path to a digraph text file"""
    if is_family_spec(source):
        return build_family(parse_family_spec(source))
    try:
        text = Path(source).read_text()
    except OSError as e:
        raise ParseError(f"cannot read digraph file {source!r}: {e}")
    return parse_digraph_text(text)


def cmd_rho(args: argparse.Namespace, out: TextIO) -> int:
    d = load_digraph(args.input)
    estimate = get_perron_service().rho(d, tol=Fraction(1, 10 ** (args.precision + 2)))
    polynomial = get_charpoly_service().characteristic_polynomial(d)

    out.write(f"rho: {estimate.format_decimal(args.precision)}\n")
    out.write(f"bracket: {estimate.bracket.lo} {estimate.bracket.hi}\n")
    out.write(f"source: {estimate.source.value}\n")
    if polynomial.as_trinomial() is not None:
        out.write(f"charpoly: {polynomial.to_sparse()}\n")
    return 0


def cmd_charpoly(args: argparse.Namespace, out: TextIO) -> int:
    method = CharpolyMethod(args.method)
    if method == CharpolyMethod.AUTO and is_family_spec(args.input):
        polynomial: Polynomial = closed_form_charpoly(parse_family_spec(args.input))
    else:
        polynomial = get_charpoly_service().compute(load_digraph(args.input), method)

    out.write(f"{polynomial.to_sparse()}\n")
    out.write(f"{polynomial.to_dense()}\n")
    return 0


def cmd_rank_bicyclic(args: argparse.Namespace, out: TextIO) -> int:
    if args.n < 4:
        raise InvalidOrderError(f"rank-bicyclic needs n >= 4, got {args.n}")
    digraphs = [build_family(p) for p in enumerate_bicyclic_params(args.n)]
    ranking = get_enumeration_service().rank_by_rho(digraphs, top_k=args.top, descending=args.direction == "max")
    shown = ranking if args.top is None else ranking[:args.top]

    for position, entry in enumerate(shown, start=1):
        relation = RELATION_SYMBOLS[entry.comparison.ordering] if entry.comparison else ""
        out.write(
            f"{position:>3}  {entry.label:<18} {entry.estimate.format_decimal(args.precision)}  {relation}".rstrip()
            + "\n"
        )
    return 0


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    digraphs = get_enumeration_service().enumerate_strongly_connected(args.n, args.arcs)
    records = [format_digraph_text(d) for d in digraphs]
    text = "\n".join(records)
    if args.out:
        Path(args.out).write_text(text)
        logger.info(f"Wrote {len(records)} digraphs to {args.out}")
    else:
        out.write(text)
    return 0


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    n_start, n_end = parse_n_range(args.n_range)
    reports = run_claims(args.claim, n_start, n_end)

    for report in reports:
        params = ",".join(f"{key}={value}" for key, value in sorted(report.params.items()))
        out.write(f"{report.claim} {params} {report.verdict.value}\n")
    if args.report:
        Path(args.report).write_text("".join(report.to_json_line() + "\n" for report in reports))

    failed = [report for report in reports if not report.passed]
    if failed:
        logger.error(f"{len(failed)} of {len(reports)} verification instances failed")
        raise VerificationFailedError(f"{len(failed)} verification instances failed")
    return 0


def cmd_find_subdigraph(args: argparse.Namespace, out: TextIO) -> int:
    d = load_digraph(args.input)
    witness = find_theta_or_infty_subdigraph(d)
    out.write(f"kind: {witness.kind.value}\n")
    out.write(f"params: {witness.params.label}\n")
    out.write(f"vertex_map: {' '.join(str(v) for v in witness.vertex_map)}\n")
    out.write(f"proper: {'yes' if witness.is_proper(d) else 'no'}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra",
        description="Certified spectral radii of strongly connected digraphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("rho", help="spectral radius of a family spec or digraph file")
    p.add_argument("input")
    p.add_argument("--precision", type=int, default=settings.DEFAULT_PRECISION)
    p.set_defaults(handler=cmd_rho)

    p = commands.add_parser("charpoly", help="characteristic polynomial")
    p.add_argument("input")
    p.add_argument("--method", choices=[m.value for m in CharpolyMethod], default=CharpolyMethod.AUTO.value)
    p.set_defaults(handler=cmd_charpoly)

    p = commands.add_parser("rank-bicyclic", help="certified ranking of the bicyclic digraphs of order n")
    p.add_argument("--n", type=int, required=True)
    direction = p.add_mutually_exclusive_group()
    direction.add_argument("--min", dest="direction", action="store_const", const="min")
    direction.add_argument("--max", dest="direction", action="store_const", const="max")
    p.add_argument("--top", type=int, default=None)
    p.add_argument("--precision", type=int, default=settings.DEFAULT_PRECISION)
    p.set_defaults(handler=cmd_rank_bicyclic, direction="min")

    p = commands.add_parser("enumerate", help="strongly connected digraphs up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--arcs", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_enumerate)

    p = commands.add_parser("verify", help="run verification claims")
    p.add_argument("--claim", default="all", choices=["all"] + sorted(CLAIMS))
    p.add_argument("--n-range", default=f"4..{settings.FAMILY_LEMMA_MAX_ORDER}")
    p.add_argument("--report", default=None)
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("find-subdigraph", help="θ- or ∞-subdigraph from the shortest-cycle construction")
    p.add_argument("input")
    p.set_defaults(handler=cmd_find_subdigraph)

    return parser


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_log_level(args.log_level)
    out = out or sys.stdout
    try:
        return args.handler(args, out)
    except SpectraError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
