"""Command-line entry point."""

import os
import sys

from dotenv import find_dotenv, load_dotenv

from .cli import formatters
from .cli._internal import RunConfig
from .cli.command_registry import build_parser
from .config import get_config
from .errors import SolverError
from ._internal import get_logger, setup_logging

logger = get_logger("app.main")


def run(argv: list[str] | None = None) -> int:
    """Parse argv, dispatch the command and return the exit code.

    Exit codes: 0 success, 2 invalid input, 3 solver failure. Diagnostics are
    written to stderr as JSON; stdout carries only the result payload.
    """
    args = build_parser().parse_args(argv)
    # LOG_LEVEL may come from .env, loaded after import-time logger setup
    setup_logging(args.log_level or os.getenv("LOG_LEVEL"))
    try:
        run_config = RunConfig.from_args(args, get_config())
        logger.info(f"Running {run_config.command}")
        return args.command.execute(run_config)
    except SolverError as e:
        logger.debug(f"{args.command_name} failed: {e.message}")
        formatters.write_diagnostic(e.to_dict(), sys.stderr)
        return e.exit_code
    except (ValueError, FileNotFoundError) as e:
        formatters.write_diagnostic({"error": type(e).__name__, "message": str(e)}, sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> None:
    # .env next to where the command runs, not next to the installed package
    load_dotenv(find_dotenv(usecwd=True))
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
