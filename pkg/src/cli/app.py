"""
Command-line front end for the q-series identity verifier.

Commands:
    list                      catalog summaries
    verify --id ID            one identity (optionally specialized with --set)
    verify-all                every identity, then the derivation and bisection checks
    expand --expr TEXT        coefficients of a Pochhammer-product expression

Exit codes: 0 when everything passed, 1 when a report is FAIL or ERROR, 2 on
usage, configuration, unknown-id or syntax errors.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from dotenv import load_dotenv

# Add the repository root to the path so `python src/cli/app.py` works
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.components.errors import QSeriesError  # noqa: E402
from src.components.qseries import Monomial, QSeries, specialize_env  # noqa: E402
from src.components.registry import (  # noqa: E402
    Status,
    VerificationReport,
    bisection_coherence,
    cross_check,
    list_identities,
    run_document,
    verify,
    verify_all,
)
from src.components.settings import Settings  # noqa: E402
from src.cli.expr_parser import evaluate_expr, format_expr, parse_expr, parse_monomial  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def configure_logging(level: Optional[str] = None) -> None:
    """Log to standard error so JSON on standard output stays clean."""
    name = (level or os.getenv('QSERIES_LOG_LEVEL', 'INFO')).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def parse_bindings(items: Sequence[str]) -> Dict[str, Monomial]:
    """
    Turn repeated ``p=mono`` flags into a binding map.

    Raises:
        argparse.ArgumentTypeError: On an item without ``=`` or without a name
        ExpressionSyntaxError: On a malformed monomial
    """
    bindings: Dict[str, Monomial] = {}
    for item in items or ():
        name, sep, value = item.partition('=')
        if not sep or not name.strip():
            raise argparse.ArgumentTypeError(f"expected p=mono, got {item!r}")
        bindings[name.strip()] = parse_monomial(value)
    return bindings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='qseries',
        description='Verify Rogers-Ramanujan type identities with exact truncated q-series.',
    )
    parser.add_argument('--denominator', type=int, default=None,
                        help='global exponent denominator D (default: QSERIES_DENOMINATOR or 2)')
    parser.add_argument('--log-level', default=None,
                        help='logging level (default: QSERIES_LOG_LEVEL or INFO)')
    commands = parser.add_subparsers(dest='command', required=True)

    listing = commands.add_parser('list', help='list catalog entries')
    listing.add_argument('--json', action='store_true', help='emit JSON')

    one = commands.add_parser('verify', help='verify one identity')
    one.add_argument('--id', required=True, dest='identity')
    one.add_argument('--order', type=int, default=None,
                     help='truncation order in whole powers of q (default: the record\'s)')
    one.add_argument('--set', action='append', default=[], metavar='p=mono',
                     help='specialize a parameter, e.g. --set y=q^1/2')
    one.add_argument('--m', type=int, default=None, help='knob value for families')
    one.add_argument('--window-padding', type=int, default=0,
                     help='extra z-window indices for constant-term records')
    one.add_argument('--json', action='store_true', help='emit the report as JSON')

    everything = commands.add_parser('verify-all', help='verify the whole catalog')
    everything.add_argument('--order', type=int, default=None,
                            help='override every record\'s default order')
    everything.add_argument('--json', metavar='PATH', default=None,
                            help='write the JSON run document to PATH ("-" for stdout)')
    everything.add_argument('--workers', type=int, default=None,
                            help='worker processes (default: QSERIES_WORKERS or 1)')
    everything.add_argument('--no-checks', action='store_true',
                            help='skip the derivation cross-checks and bisection checks')

    expand = commands.add_parser('expand', help='expand a product expression')
    expand.add_argument('--expr', required=True)
    expand.add_argument('--order', type=int, required=True)
    expand.add_argument('--set', action='append', default=[], metavar='p=mono')
    expand.add_argument('--json', action='store_true', help='emit JSON')
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text + '\n')


def list_cmd(args: argparse.Namespace, settings: Settings) -> int:
    entries = list_identities()
    logger.info(f"Catalog holds {len(entries)} identities")
    if args.json:
        _emit(json.dumps(entries, indent=2))
        return EXIT_OK
    for entry in entries:
        knob = entry['knob']
        suffix = f" m={knob[0]}..{knob[1]}" if knob else ''
        params = ','.join(entry['params']) or '-'
        _emit(f"{entry['id']:<14} [{params}]{suffix}  {entry['title']}  ({entry['paper_ref']})")
    return EXIT_OK


def _exit_code(reports: Sequence[VerificationReport]) -> int:
    return EXIT_OK if all(r.status is Status.PASS for r in reports) else EXIT_FAILED


def verify_cmd(args: argparse.Namespace, settings: Settings) -> int:
    report = verify(
        args.identity,
        order=args.order,
        env=parse_bindings(args.set),
        m=args.m,
        settings=settings,
        window_padding=args.window_padding,
    )
    _emit(json.dumps(report.to_dict(), indent=2) if args.json else report.summary_line())
    return _exit_code([report])


def verify_all_cmd(args: argparse.Namespace, settings: Settings) -> int:
    reports: List[VerificationReport] = verify_all(args.order, settings, args.workers)
    if not args.no_checks:
        reports += cross_check(order=args.order, settings=settings)
        reports += bisection_coherence(order=args.order, settings=settings)

    document = run_document(reports)
    if args.json == '-':
        _emit(json.dumps(document, indent=2))
    else:
        for report in reports:
            _emit(report.summary_line())
        if args.json:
            Path(args.json).write_text(json.dumps(document, indent=2) + '\n', encoding='utf-8')
            logger.info(f"Wrote {len(reports)} reports to {args.json}")
    counts = document['counts']
    logger.info(
        f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['ERROR']} errors"
    )
    return _exit_code(reports)


def integer_listing(series: QSeries, order: int) -> Optional[List[int]]:
    """Plain coefficients of q^0..q^order, or None if the series needs the full notation."""
    if series.has_fractional_powers() or (series.lo is not None and series.lo < 0):
        return None
    values = []
    for coeff in series.to_list(order):
        if any(key != (0, 0) for key in coeff.raw):
            return None
        values.append(coeff.constant_term())
    return values


def expand_cmd(args: argparse.Namespace, settings: Settings) -> int:
    ast = parse_expr(args.expr)
    env = specialize_env(parse_bindings(args.set), settings.denominator)
    series = evaluate_expr(ast, args.order, settings.denominator, env)
    logger.info(f"Expanded {format_expr(ast)} to order {args.order}")
    if args.json:
        _emit(json.dumps({
            'expression': args.expr,
            'order': args.order,
            'denominator': settings.denominator,
            'coefficients': series.to_json(),
        }, indent=2))
    else:
        values = integer_listing(series, args.order)
        _emit(str(series) if values is None else ','.join(str(v) for v in values))
    return EXIT_OK


COMMANDS = {
    'list': list_cmd,
    'verify': verify_cmd,
    'verify-all': verify_all_cmd,
    'expand': expand_cmd,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    configure_logging(args.log_level)
    try:
        settings = Settings(denominator=args.denominator)
        return COMMANDS[args.command](args, settings)
    except (QSeriesError, argparse.ArgumentTypeError, ZeroDivisionError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
