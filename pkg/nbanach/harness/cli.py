"""Command-line front door: ``python -m nbanach <command> [--config FILE] ...``.

The JSON report goes to stdout, the human summary and log to stderr. Exit codes:
0 when every check passed or had its hypothesis violated, 1 when a check failed or
errored, 2 for a bad config.
"""

import argparse
import json
import logging
import sys

from typing import Sequence

from ..core.sampling import SweepSettings
from ..errors import ConfigError
from .config import load_config, parse_config
from .registry import checks_for
from .suite import run_suite, select_checks, summary_lines


DEFAULT_CONFIG = json.dumps({'instance': {'kind': 'pointwise', 'm': 4, 'n': 3}})

EXIT_CONFIG_ERROR = 2

COMMANDS = {
    'check-axioms': "n-norm axioms and the Cauchy-Schwarz gap",
    'invert': "Neumann inversion, classification, openness, continuity, perturbation, group property",
    'resolvent': "resolvent series against the exact inverse",
    'tdz-scan': "topological divisors of zero are non-invertible",
    'gkz': "b-linear functionals, b-homomorphisms and the exponential series",
    'audit': "multiplicative inequality, unit law, continuity of multiplication",
    'run': "every registered check",
}

logger = logging.getLogger('nbanach')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help="JSON run config (default: pointwise C^4 with n = 3)")
    common.add_argument('--seed', type=int, help="override the config seed")
    common.add_argument('--samples', type=int, help="override the config sample count")
    common.add_argument('--tol', type=float, help="override the config tolerance")
    common.add_argument('--exact', action='store_true', help="exact rational arithmetic")
    common.add_argument('--parallel', action='store_true', help="run sample sweeps on a process pool")
    common.add_argument('--workers', type=int, help="pool size (default: cpu count - 1)")
    common.add_argument('-v', '--verbose', action='count', default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(prog='nbanach', description="Audit n-normed algebras and their theorems.")
    commands = parser.add_subparsers(dest='command', required=True)
    for name, help_ in COMMANDS.items():
        commands.add_parser(name, parents=[common], help=help_)
    return parser


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.handlers[:] = [handler]
    logger.setLevel(level)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    overrides = {
        'seed': args.seed,
        'samples': args.samples,
        'tolerance': args.tol,
        'arithmetic_mode': 'exact' if args.exact else None,
    }
    try:
        if args.config is not None:
            cfg = load_config(args.config, overrides)
        else:
            cfg = parse_config(DEFAULT_CONFIG, overrides)
        cfg = select_checks(cfg, checks_for(args.command))
    except ConfigError as exc:
        for error in exc.errors:
            print(f"config error: {error}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    settings = SweepSettings(parallel=args.parallel, num_workers=args.workers, verbose=args.verbose > 0)
    report = run_suite(cfg, settings)

    print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    for line in summary_lines(report):
        print(line, file=sys.stderr)
    return report.exit_code
