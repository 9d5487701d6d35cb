"""
ek-scattering-lab

A pseudospectral simulation and verification laboratory for the Euler-Korteweg system near a
constant state with zero sound speed: final-data scattering runs, second-approximation decay,
gauge-weighted energies, Littlewood-Paley checks and resonance maps.

License: MIT
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError
from utils.app_builder import AppBuilder

__version__ = "0.3.0"

SUBCOMMANDS = ["simulate", "scatter", "second-approx", "verify-dispersive", "verify-besov", "gauge",
               "resonance-map", "selftest"]

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ek-lab", description=__doc__.strip().splitlines()[2])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="TOML or JSON experiment file (defaults apply to missing keys)")
    parser.add_argument("--seed", type=int, help="override rng_seed")
    parser.add_argument("--out", help="override output.directory")
    parser.add_argument("--threads", type=int, help="override output.threads")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def _fail(category: ErrorCategory, record: dict) -> int:
    print(json.dumps(record), file=sys.stderr)
    return category.exit_status


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    app_builder = AppBuilder(__version__, args.log_level)
    app_builder.configure_logging()
    overrides = {"rng_seed": args.seed, "output.directory": args.out, "output.threads": args.threads}
    try:
        controller = app_builder.build_app(args.config, overrides)
        controller.run_subcommand(args.subcommand)
    except LaboratoryError as error:
        logger.error("%s: %s", error.category.slug, error)
        return _fail(error.category, error.to_record())
    except Exception as error:
        logger.exception("Unexpected failure")
        return _fail(ErrorCategory.INTERNAL, {"error": ErrorCategory.INTERNAL.slug, "message": str(error)})
    return 0


# Entrypoint
if __name__ == "__main__":
    sys.exit(main())
