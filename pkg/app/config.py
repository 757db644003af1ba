import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

CONFIG_PATH = Path(__file__).parent.parent / "config.json"

ENV_PREFIX = "SOLVER_"


@dataclass(frozen=True)
class Config:
    """Numerical knobs shared by every solver module."""
    # Eigenpair residual and eigenvalue equality
    tol: float = 1e-9
    # Probability rows must sum to 1 within this
    row_tol: float = 1e-12
    # Argmax/argmin ties
    tie_tol: float = 1e-9
    # ||mP - m||_1 on invariant measures
    measure_tol: float = 1e-10
    # Recession fixed point witness
    witness_tol: float = 1e-8
    witness_max_iter: int = 100_000
    # Two bias vectors lie on one line when max-min of their difference is below this
    line_tol: float = 1e-8

    state_cap: int = 20
    policy_cap: int = 1_000_000
    counter_policy_cap: int = 100_000
    pattern_cap: int = 65_536
    circuit_cap: int = 100_000
    max_outer: int | None = None

    seed: int = 0
    workers: int = 1

    def with_overrides(self, **overrides) -> "Config":
        """Return a copy with the given fields replaced (None values are ignored)."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        config = dataclasses.replace(self, **changes)
        _validate(config)
        return config


_FLOAT_FIELDS = ("tol", "row_tol", "tie_tol", "measure_tol", "witness_tol", "line_tol")
_INT_FIELDS = (
    "witness_max_iter", "state_cap", "policy_cap", "counter_policy_cap",
    "pattern_cap", "circuit_cap", "max_outer", "seed", "workers",
)


def _validate(config: Config) -> None:
    """Reject non-positive tolerances and caps."""
    for name in _FLOAT_FIELDS:
        if not getattr(config, name) > 0:
            raise ValueError(f"Tolerance must be positive: {name}={getattr(config, name)}")
    for name in _INT_FIELDS:
        value = getattr(config, name)
        if name in ("seed",) or value is None:
            continue
        if value < 1:
            raise ValueError(f"Cap must be at least 1: {name}={value}")


def _coerce(name: str, raw: str | int | float | None) -> int | float | None:
    """Convert a raw config value to the field's type."""
    if raw is None:
        return None
    if name in _FLOAT_FIELDS:
        return float(raw)
    if name in _INT_FIELDS:
        return int(float(raw))
    raise ValueError(f"Unknown configuration key: {name}")


def _config_path() -> Path:
    """Config file location: SOLVER_CONFIG or config.json at the repository root."""
    env_path = os.getenv(f"{ENV_PREFIX}CONFIG")
    return Path(env_path) if env_path else CONFIG_PATH


def load_config(path: Path | None = None) -> Config:
    """Load configuration from an optional JSON file and SOLVER_* environment variables.

    A missing default config.json means built-in defaults. A path given
    explicitly (argument or SOLVER_CONFIG) must exist.
    """
    explicit = path is not None or os.getenv(f"{ENV_PREFIX}CONFIG") is not None
    path = path or _config_path()

    values: dict[str, int | float | None] = {}
    if path.exists():
        with open(path) as f:
            data = json.load(f)
        for name, raw in data.items():
            values[name] = _coerce(name, raw)
    elif explicit:
        raise FileNotFoundError(f"Config file not found: {path}")

    # Environment wins over the file: SOLVER_TOL, SOLVER_STATE_CAP, ...
    for name in _FLOAT_FIELDS + _INT_FIELDS:
        env_value = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if env_value:
            values[name] = _coerce(name, env_value)

    config = Config(**values)
    _validate(config)
    return config


# Singleton config instance
_config: Config | None = None


def get_config() -> Config:
    """Get the singleton config instance."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reset_config() -> None:
    """Forget the singleton so the next get_config() reloads."""
    global _config
    _config = None
