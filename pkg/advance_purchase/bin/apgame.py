#!/usr/bin/env python
# -*- coding: utf-8 -*-

import argparse
import logging
from pathlib import Path
import sys

from advance_purchase import experiments
from advance_purchase.config import load_scenario_config
from advance_purchase.errors import DomainError, ParseError
from advance_purchase.helpers import new_output_dir
from advance_purchase.pipelines import CsvPipeline
import advance_purchase.settings

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOGLEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def get_logger(loglevel="WARNING", verbose=False):
    """
    Configure the package logger

    Args:
        loglevel: str, valid logger log-level
        verbose: bool, if true logging will be duplicated to stderr

    Returns:
        logging.Logger for the advance_purchase package
    """
    logger = logging.getLogger("advance_purchase")

    if verbose and not logger.handlers:
        logger.addHandler(logging.StreamHandler())

    logger.setLevel(loglevel.upper())
    return logger


def get_arguments(argv=None):
    """
    Parse the command line arguments

    Returns: result of the command line arguments
    """
    parser = argparse.ArgumentParser(
        description="Solve and verify the advance-purchase pricing game")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", required=True, type=Path,
        help="Scenario file with one `key = value` per line")
    common.add_argument(
        "--loglevel", default="WARNING", type=str.upper, choices=LOGLEVELS,
        help="Set logging level")
    common.add_argument(
        "--verbose", default=False, action="store_const",
        const=True, help="Print progress details to stderr")

    commands = parser.add_subparsers(dest="command", required=True)

    cutoff = commands.add_parser(
        "cutoff", parents=[common],
        help="Cutoff advance price at one committed spot price")
    cutoff.add_argument("--p2", required=True, type=float,
                        help="Committed spot price")

    sweep = commands.add_parser(
        "sweep", parents=[common],
        help="Tabulate the cutoff over the scenario's spot-price range")
    sweep.add_argument("--out", type=Path,
                       help="CSV destination; printed to stdout if omitted")

    commands.add_parser(
        "optimal", parents=[common],
        help="Optimal offers for the scenario's regime")

    verify = commands.add_parser(
        "verify", parents=[common],
        help="Run the verification suite over seeded random draws")
    verify.add_argument("--seed", type=int,
                        default=advance_purchase.settings.DEFAULT_SEED,
                        help="Seed for the parameter draws")
    verify.add_argument("--out", type=Path,
                        help="Where to write the failure table")
    verify.add_argument("--workers", type=int,
                        help="Processes evaluating the draws (default: "
                        "settings.VERIFY_WORKERS, or every CPU)")

    commands.add_parser(
        "report", parents=[common],
        help="Pricing, commitment and benchmark cutoffs for the scenario")

    return parser.parse_args(argv)


def verify(config, seed, out, logger, workers=None):
    """
    Run the verification suite and save its failure table

    Args:
        config (ScenarioConfig): the scenario
        seed (int): generator seed
        out (Path): failure table destination, or None for a fresh directory
            under settings.OUTPUT_DIR (only used when something failed)
        logger (logging.Logger): the package logger
        workers (int): processes evaluating the draws

    Returns:
        exit status
    """
    report = experiments.run_verification(config, seed=seed, workers=workers)
    print(report.text())

    if out is None and not report.ok:
        output_root = Path(advance_purchase.settings.OUTPUT_DIR) / "verify"
        out = new_output_dir(output_root) / "failures.csv"

    if out is not None:
        saved = CsvPipeline().save_table(report.failures, out)
        logger.info("failure table written to %s", saved)

    return EXIT_OK if report.ok else EXIT_FAILED


def main(argv=None):
    """
    Dispatch a subcommand and translate its outcome into an exit status
    """
    args = get_arguments(argv)
    logger = get_logger(args.loglevel, args.verbose)

    try:
        config = load_scenario_config(args.config)

        if args.command == "cutoff":
            print(experiments.cutoff_report(config, args.p2))
        elif args.command == "sweep":
            table = experiments.run_sweep(config)
            pipeline = CsvPipeline()

            if args.out is None:
                sys.stdout.write(pipeline.render(table))
            else:
                pipeline.save_table(table, args.out)
                logger.info("sweep written to %s", args.out)
        elif args.command == "optimal":
            print(experiments.optimal_report(config))
        elif args.command == "verify":
            return verify(config, args.seed, args.out, logger, args.workers)
        else:
            print(experiments.report_scenario(config))
    except (ParseError, DomainError, OSError) as err:
        logger.error("%s", err)
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
