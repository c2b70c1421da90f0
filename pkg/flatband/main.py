"""
Main entry point for the flat-band toolkit.
"""

import argparse
import logging
import logging.handlers
import sys
from typing import List, Optional

from .core.config import get_config
from .core.events import EventLogger
from .handlers import VERBS, Command, run

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='flatband',
        description='Flat-band analysis of Z^d-periodic weighted graphs',
    )
    sub = parser.add_subparsers(dest='verb', required=True)

    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument('input', help='graph-spec JSON document')
        p.add_argument('--output', '-o', help='report path (default: standard output)')
        p.add_argument('--seed', type=int, help='seed for sampled checks and probes')
        if verb == 'bands':
            p.add_argument('--grid', type=int, help='odd number of theta samples per axis')
            p.add_argument('--epsilon', help='coupling in front of the hopping matrices')
        if verb == 'flatband':
            method = p.add_mutually_exclusive_group()
            method.add_argument('--exact', dest='method', action='store_const', const='exact')
            method.add_argument('--sampled', dest='method', action='store_const', const='sampled')
        if verb in ('loops', 'extremal', 'series-check'):
            p.add_argument('--base', type=int, help='base vertex j (1-based)')
        if verb in ('loops', 'series-check'):
            p.add_argument('--order', type=int, help='series order')
        if verb == 'probe':
            p.add_argument('--trials', type=int, help='number of sampled potentials')
    return parser


def setup_logging():
    """Console logging plus an optional rotating file log"""
    config = get_config()
    logging.basicConfig(
        level=getattr(logging, config.log_level),
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    if config.log_file:
        log_handler = logging.handlers.RotatingFileHandler(
            config.log_file,
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        log_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        logging.getLogger().addHandler(log_handler)


def command_from_args(args: argparse.Namespace) -> Command:
    options = {k: v for k, v in vars(args).items() if k not in ('verb', 'input', 'output')}
    return Command(verb=args.verb, input=args.input, options=options, output=args.output)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one verb and return its exit code"""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        setup_logging()
        return run(command_from_args(args))
    except KeyboardInterrupt:
        logger.info("Run stopped by user")
        return 130
    except Exception as e:
        logger.error(f"Run crashed: {e}")
        EventLogger().log_event("RUN_CRASH", str(e))
        raise


if __name__ == "__main__":
    sys.exit(main())
