"""Command registry: every CLI subcommand is declared here."""

import argparse

from ._internal import GameCommand, Option, StandaloneCommand

G_OPTION = Option(("--g",), {
    "type": float, "nargs": "+", "metavar": "G",
    "help": "Add G_i to every payment of state i",
})
ANCHOR_OPTION = Option(("--anchor",), {"help": "State whose bias entry is 0 (default: last state)"})
START_OPTION = Option(("--random-start",), {
    "action": "store_true", "help": "Start policy iteration from a seeded random MIN policy",
})
SLICE_OPTIONS = (
    Option(("--axes",), {"nargs": 2, "required": True, "metavar": "STATE", "help": "States spanning the slice"}),
    Option(("--box",), {"type": float, "nargs": 2, "default": [-10.0, 10.0], "metavar": ("LO", "HI")}),
    Option(("--resolution",), {"type": int, "default": 21, "help": "Samples per axis"}),
)


# ========================================
# Game commands
# ========================================

COMMANDS = [
    GameCommand(
        name="check-structure",
        description="Decide solvability for every payment vector from the transition supports",
        handler="check_structure",
        formatter="format_structure",
    ),

    GameCommand(
        name="solve",
        description="Eigenvalue and bias vector by policy iteration",
        handler="solve",
        formatter="format_solution",
        options=(G_OPTION, ANCHOR_OPTION, START_OPTION),
    ),

    GameCommand(
        name="certify",
        description="Solve, then certify uniqueness of the bias vector",
        handler="certify",
        formatter="format_certificate",
        options=(G_OPTION, ANCHOR_OPTION, START_OPTION),
    ),

    GameCommand(
        name="policy-trace",
        description="Per-step trace of policy iteration",
        handler="policy_trace",
        formatter="format_trace",
        csv_formatter="trace_csv",
        options=(G_OPTION, ANCHOR_OPTION, START_OPTION),
    ),

    GameCommand(
        name="value-iterate",
        description="Finite-horizon values T^k(0) and the mean payoff estimate",
        handler="iterate_values",
        formatter="format_values",
        options=(G_OPTION, Option(("--k",), {"type": int, "default": 1000, "help": "Horizon"})),
    ),

    GameCommand(
        name="explore",
        description="Classify bias uniqueness on a grid over a two-state slice",
        handler="explore",
        formatter="format_cell_map",
        csv_formatter="cell_map_csv",
        options=(G_OPTION, ANCHOR_OPTION, *SLICE_OPTIONS),
    ),

    GameCommand(
        name="exact-cells",
        description="Candidate cell boundaries of a deterministic game on a two-state slice",
        handler="exact_cells",
        formatter="format_lines",
        csv_formatter="lines_csv",
        options=(G_OPTION, *SLICE_OPTIONS),
    ),

    StandaloneCommand(
        name="example",
        description="Print the built-in three-state example game",
        handler="example",
        formatter="format_example",
        options=(G_OPTION,),
    ),
]


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per registered command."""
    parser = argparse.ArgumentParser(
        prog="meanpayoff",
        description="Mean-payoff stochastic game solver",
    )
    subparsers = parser.add_subparsers(dest="command_name", required=True, metavar="COMMAND")
    for command in COMMANDS:
        command.register(subparsers)
    return parser
