"""Base classes for declarative CLI commands.

A command names a handler function (in handlers.py) that does the work and a
formatter function (in formatters.py) that turns the result into a payload.
Adding a command means adding one entry to command_registry.py.
"""

import argparse
import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any

from ...errors import InputError
from ...markov import NotWellPosed
from .. import formatters, handlers
from .run_config import RunConfig, add_common_arguments


@dataclass(frozen=True)
class Option:
    """One extra argparse argument: positional flags plus add_argument keywords."""
    flags: tuple[str, ...]
    kwargs: dict[str, Any] = field(default_factory=dict)

    def add_to(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(*self.flags, **self.kwargs)


class CommandBase(ABC):
    """Base class for all CLI commands."""

    def __init__(self, name: str, description: str, options: tuple[Option, ...] = ()):
        """Initialize command.

        Args:
            name: Subcommand name (e.g. "solve")
            description: Help text
            options: Command-specific arguments
        """
        self.name = name
        self.description = description
        self.options = options

    def register(self, subparsers) -> None:
        parser = subparsers.add_parser(self.name, help=self.description, description=self.description)
        self.add_arguments(parser)
        for option in self.options:
            option.add_to(parser)
        parser.set_defaults(command=self)

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    @abstractmethod
    def execute(self, run: RunConfig) -> int:
        """Run the command and return the process exit code."""


class GameCommand(CommandBase):
    """A command reading a game file, calling a handler and printing its payload.

    Example:
        GameCommand(
            name="solve",
            description="Eigenvalue and bias by policy iteration",
            handler="solve",
            formatter="format_solution",
        )
    """

    needs_game = True

    def __init__(
        self,
        name: str,
        description: str,
        handler: str,
        formatter: str,
        csv_formatter: str | None = None,
        options: tuple[Option, ...] = (),
    ):
        """Initialize game command.

        Args:
            name: Subcommand name
            description: Help text
            handler: Function name in handlers (e.g. "solve")
            formatter: Function name in formatters producing the JSON payload
            csv_formatter: Function name in formatters producing (header, rows), if CSV is supported
            options: Command-specific arguments
        """
        super().__init__(name, description, options)
        self.handler = handler
        self.formatter = formatter
        self.csv_formatter = csv_formatter

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        if self.needs_game:
            parser.add_argument("game", help="Game description (JSON)")
        add_common_arguments(parser)

    def execute(self, run: RunConfig) -> int:
        if run.format == "csv" and self.csv_formatter is None:
            raise InputError(f"CSV output is not available for '{self.name}'", command=self.name)

        spec = run.load_game() if self.needs_game else None
        result = getattr(handlers, self.handler)(spec, run)
        if isinstance(result, NotWellPosed):
            formatters.write_diagnostic(
                {**result.to_dict(spec.states), "tolerance": run.config.tol}, sys.stderr
            )
            return 3

        if run.format == "csv":
            header, rows = getattr(formatters, self.csv_formatter)(spec, result, run)
            formatters.write_csv(header, rows, run.output)
        else:
            payload = getattr(formatters, self.formatter)(spec, result, run)
            formatters.write_json(payload, run.output)
        return 0


class StandaloneCommand(GameCommand):
    """A GameCommand that needs no game file (built-in fixtures)."""

    needs_game = False
