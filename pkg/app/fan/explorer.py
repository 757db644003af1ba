"""Sampled classification of bias uniqueness over an affine payment slice."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..config import Config, get_config
from ..errors import NotStructurallySolvable, SolverError
from ..game import GameSpec
from ..markov import NotWellPosed
from ..policy import certify_uniqueness, hoffman_karp
from ..structural import structural_verdict
from .._internal import get_logger
from .slices import AffineSlice

logger = get_logger(__name__)

NOT_WELL_POSED = "NOT_WELL_POSED"
FAILED = "FAILED"


@dataclass(frozen=True, eq=False)
class SampleRecord:
    index: tuple[int, ...]
    coords: tuple[float, ...]
    verdict: str
    lam: float | None = None
    bias: np.ndarray | None = None
    residual: float | None = None
    # (terminal MIN policy, terminal MAX reply); None for failed samples
    fingerprint: tuple | None = None
    reason: str | None = None


@dataclass(frozen=True)
class BoundaryEdge:
    """Neighbouring samples a, b (differing by one step along axis) in different cells."""
    a: tuple[int, ...]
    b: tuple[int, ...]
    axis: int
    kind: str


@dataclass(eq=False)
class CellMap:
    slice: AffineSlice
    anchor: int
    records: list[SampleRecord] = field(default_factory=list)
    boundaries: list[BoundaryEdge] = field(default_factory=list)
    tolerance: float = 1e-9

    def verdict_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for record in self.records:
            counts[record.verdict] = counts.get(record.verdict, 0) + 1
        return dict(sorted(counts.items()))

    def csv_header(self, spec: GameSpec) -> list[str]:
        return [*self.slice.labels, "lambda", "verdict", *(f"x{s}" for s in spec.states), "reason"]

    def csv_rows(self, spec: GameSpec) -> list[list]:
        rows = []
        for record in self.records:
            bias = list(record.bias) if record.bias is not None else [""] * spec.n
            lam = record.lam if record.lam is not None else ""
            rows.append([*record.coords, lam, record.verdict, *bias, record.reason or ""])
        return rows

    def to_dict(self, spec: GameSpec) -> dict:
        return {
            "axes": list(self.slice.labels),
            "box": [list(b) for b in self.slice.box],
            "resolution": self.slice.resolution,
            "anchor": spec.states[self.anchor],
            "counts": self.verdict_counts(),
            "samples": [
                {
                    "index": list(r.index),
                    "coords": list(r.coords),
                    "lambda": r.lam,
                    "verdict": r.verdict,
                    "bias": (
                        {spec.states[i]: float(x) for i, x in enumerate(r.bias)}
                        if r.bias is not None else None
                    ),
                    "residual": r.residual,
                    "reason": r.reason,
                }
                for r in self.records
            ],
            "boundaries": [
                {"a": list(e.a), "b": list(e.b), "axis": e.axis, "kind": e.kind}
                for e in self.boundaries
            ],
            "tolerance": self.tolerance,
        }


def classify_sample(spec: GameSpec, slice_: AffineSlice, index: tuple[int, ...],
                    coords: tuple[float, ...], anchor: int, config: Config) -> SampleRecord:
    """Solve and certify one grid point; solver errors become FAILED records."""
    r = slice_.payment_at(coords)
    try:
        outcome, trace = hoffman_karp(spec, r, config=config)
        if isinstance(outcome, NotWellPosed):
            return SampleRecord(index, coords, NOT_WELL_POSED, reason="state-dependent gain")
        certificate = certify_uniqueness(spec, r, outcome, config)
    except SolverError as e:
        logger.warning(f"Sample {index} at {coords} failed: {type(e).__name__}: {e.message}")
        return SampleRecord(index, coords, FAILED, reason=f"{type(e).__name__}: {e.message}")

    pi = outcome.counter_policy.choice if outcome.counter_policy is not None else ()
    return SampleRecord(
        index, coords, certificate.verdict.value,
        lam=outcome.lam,
        bias=outcome.anchored(anchor),
        residual=outcome.residual,
        fingerprint=(trace.final_sigma.choice, pi),
    )


def _classify_task(task) -> SampleRecord:
    return classify_sample(*task)


def detect_boundaries(records: list[SampleRecord], resolution: int) -> list[BoundaryEdge]:
    """Edges between grid neighbours whose verdicts or fingerprints differ."""
    by_index = {record.index: record for record in records}
    edges = []
    for index, record in by_index.items():
        for axis in range(len(index)):
            if index[axis] + 1 >= resolution:
                continue
            neighbour = by_index[index[:axis] + (index[axis] + 1,) + index[axis + 1:]]
            if record.verdict != neighbour.verdict:
                edges.append(BoundaryEdge(index, neighbour.index, axis, "verdict"))
            elif record.fingerprint != neighbour.fingerprint:
                edges.append(BoundaryEdge(index, neighbour.index, axis, "policy"))
    return sorted(edges, key=lambda e: (e.a, e.axis))


def explore_slice(spec: GameSpec, slice_: AffineSlice, anchor: int | None = None,
                  config: Config | None = None) -> CellMap:
    """Run policy iteration and the uniqueness certificate at every grid point.

    Args:
        spec: A structurally solvable game
        slice_: Slice and sampling grid
        anchor: State whose bias entry is pinned to 0 in the records (last state by default)
        config: Tolerances and the worker count

    Returns:
        CellMap with records in grid-index order and detected boundary edges

    Raises:
        NotStructurallySolvable: some payment vector has no eigenvalue
    """
    config = config or get_config()
    report = structural_verdict(spec, config)
    if not report.solvable:
        raise NotStructurallySolvable(
            "Slice sweep needs a structurally solvable game",
            closed_sets=[sorted(spec.states[i] for i in range(spec.n) if m >> i & 1)
                         for m in report.closed_nontrivial],
        )
    anchor = spec.n - 1 if anchor is None else anchor

    tasks = [(spec, slice_, index, coords, anchor, config) for index, coords in slice_.grid()]
    logger.info(f"Exploring {len(tasks)} samples with {config.workers} worker(s)")
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunk = max(1, len(tasks) // (4 * config.workers))
            records = list(pool.map(_classify_task, tasks, chunksize=chunk))
    else:
        records = [_classify_task(task) for task in tasks]
    records.sort(key=lambda r: r.index)

    cell_map = CellMap(slice_, anchor, records, detect_boundaries(records, slice_.resolution), config.tol)
    logger.info(f"Sweep finished: {cell_map.verdict_counts()}, {len(cell_map.boundaries)} boundary edges")
    return cell_map
