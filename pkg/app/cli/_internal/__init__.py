"""Internal framework modules for the command line.

Adding a command only needs an entry in command_registry.py plus its handler
and formatter.
"""

from .command_base import CommandBase, GameCommand, Option, StandaloneCommand
from .run_config import RunConfig, add_common_arguments

__all__ = ["CommandBase", "GameCommand", "Option", "RunConfig", "StandaloneCommand", "add_common_arguments"]
