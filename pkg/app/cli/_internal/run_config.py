"""Per-invocation settings assembled from the command line."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from ...config import Config, get_config
from ...errors import UnknownIdentifier
from ...game import GameSpec, load_game
from ..._internal.logging import VALID_LEVELS


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every command; unset flags keep the configured values."""
    parser.add_argument("--tol", type=float, help="Residual and eigenvalue tolerance (default 1e-9)")
    parser.add_argument("--max-outer", type=int, help="Outer policy iteration bound (default |Σ|+1)")
    parser.add_argument("--cap-subsets", type=int,
                        help="Largest number of subsets enumerated by the structural check (default 2^20)")
    parser.add_argument("--seed", type=int, help="Seed for randomized starts (default 0)")
    parser.add_argument("--workers", type=int, help="Worker processes for slice sweeps (default 1)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", type=Path, help="Write the payload here instead of stdout")
    parser.add_argument("--renormalize", action="store_true",
                        help="Rescale transition rows whose sum is slightly off")
    parser.add_argument("--timings", action="store_true", help="Include wall-clock timings")
    parser.add_argument("--log-level", choices=VALID_LEVELS, type=str.upper,
                        help="Log level for stderr records (default: LOG_LEVEL or WARNING)")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path | None
    config: Config
    format: str
    output: Path | None
    renormalize: bool
    timings: bool
    args: argparse.Namespace

    @classmethod
    def from_args(cls, args: argparse.Namespace, base: Config | None = None) -> "RunConfig":
        base = base or get_config()
        state_cap = None
        if args.cap_subsets is not None:
            # 2^k subsets for k states; one subset would mean zero states
            if args.cap_subsets < 2:
                raise ValueError(f"--cap-subsets must be at least 2, got {args.cap_subsets}")
            state_cap = args.cap_subsets.bit_length() - 1
        config = base.with_overrides(
            tol=args.tol,
            max_outer=args.max_outer,
            state_cap=state_cap,
            seed=args.seed,
            workers=args.workers,
        )
        game = getattr(args, "game", None)
        return cls(
            command=args.command.name,
            input=Path(game) if game else None,
            config=config,
            format=args.format,
            output=args.output,
            renormalize=args.renormalize,
            timings=args.timings,
            args=args,
        )

    def load_game(self) -> GameSpec:
        return load_game(self.input, renormalize=self.renormalize, config=self.config)

    def anchor(self, spec: GameSpec) -> int:
        """Index of the --anchor state, the last state by default."""
        label = getattr(self.args, "anchor", None)
        if label is None:
            return spec.n - 1
        if label not in spec.states:
            raise UnknownIdentifier(f"Unknown anchor state '{label}'", state=label)
        return spec.state_index(label)
