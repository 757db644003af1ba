"""Payload formatters and writers for CLI output.

Formatters take (spec, result, run) and return a JSON-ready dict, or
(header, rows) for CSV. Subsets are sorted lists of state identifiers.
"""

import csv
import json
import sys
from pathlib import Path
from typing import Any, TextIO

from ..game import GameSpec, ValueIteration, dump_game
from ..structural import GaloisReport, from_mask


def subset_labels(spec: GameSpec, indices) -> list[str]:
    return [spec.states[i] for i in sorted(indices)]


def _mask_labels(spec: GameSpec, mask: int) -> list[str]:
    return subset_labels(spec, from_mask(mask, spec.n))


def _vector(spec: GameSpec, values) -> dict[str, float]:
    return {spec.states[i]: float(x) for i, x in enumerate(values)}


def _by_size(subsets: list[list[str]]) -> list[list[str]]:
    return sorted(subsets, key=lambda s: (len(s), s))


def format_structure(spec: GameSpec, report: GaloisReport, run) -> dict:
    """Families, Galois maps and closures, verdict and witnesses."""
    minus = sorted(report.f_minus.members, key=lambda m: (bin(m).count("1"), _mask_labels(spec, m)))
    plus = sorted(report.f_plus.members, key=lambda m: (bin(m).count("1"), _mask_labels(spec, m)))
    return {
        "verdict": report.verdict.value,
        "f_minus": _by_size([_mask_labels(spec, m) for m in minus]),
        "f_plus": _by_size([_mask_labels(spec, m) for m in plus]),
        "phi": [
            {
                "subset": _mask_labels(spec, m),
                "phi": _mask_labels(spec, report.phi[m]),
                "closure": _mask_labels(spec, report.closure(m)),
                "phi_empty": report.phi[m] == 0,
            }
            for m in minus
        ],
        "phi_star": [
            {
                "subset": _mask_labels(spec, m),
                "phi_star": _mask_labels(spec, report.phi_star[m]),
                "closure": _mask_labels(spec, report.dual_closure(m)),
            }
            for m in plus
        ],
        "closed_nontrivial": [_mask_labels(spec, m) for m in report.closed_nontrivial],
        "witnesses": [
            {
                "closed_set": subset_labels(spec, w.closed_set),
                "x": _vector(spec, w.x),
                "residual": w.residual,
                "iterations": w.iterations,
                "converged": w.converged,
                "argmin_equals_closed_set": w.argmin_equals_closed_set,
            }
            for w in report.witnesses
        ],
        "tolerance": run.config.witness_tol,
    }


def format_solution(spec: GameSpec, solution, run) -> dict:
    """Eigenvalue, anchored bias and terminal strategies."""
    pair = solution.pair
    anchor = run.anchor(spec)
    payload = {
        "lambda": pair.lam,
        "bias": _vector(spec, pair.anchored(anchor)),
        "anchor": spec.states[anchor],
        "residual": pair.residual,
        "tolerance": pair.tolerance,
        "outer_steps": len(solution.trace.steps),
        "min_policy": spec.policy_labels(solution.trace.final_sigma),
    }
    if pair.counter_policy is not None:
        payload["max_policy"] = spec.counter_policy_labels(pair.counter_policy)
    return payload


def format_certificate(spec: GameSpec, solution, run) -> dict:
    certificate = solution.certificate
    payload = format_solution(spec, solution, run)
    cert = certificate.to_dict(spec)
    anchor = run.anchor(spec)
    cert["eigenvector_lines"] = [_vector(spec, v - v[anchor]) for v in certificate.eigenvector_lines]
    if certificate.witnesses:
        cert["witnesses"] = [_vector(spec, v - v[anchor]) for v in certificate.witnesses]
    payload["certificate"] = cert
    return payload


def format_trace(spec: GameSpec, solution, run) -> dict:
    payload = format_solution(spec, solution, run)
    payload["trace"] = solution.trace.to_dict(spec, timings=run.timings)
    if solution.tropical is not None:
        rho, checked = solution.tropical
        payload["tropical"] = {"rho": rho, "eigenvalue_is_rho": checked}
    return payload


def trace_csv(spec: GameSpec, solution, run) -> tuple[list[str], list[list]]:
    header = ["step", "lambda", "residual", *(f"sigma_{s}" for s in spec.states), *(f"x{s}" for s in spec.states)]
    rows = []
    for k, step in enumerate(solution.trace.steps):
        labels = spec.policy_labels(step.sigma)
        rows.append([k, step.lam, step.residual, *(labels[s] for s in spec.states), *step.bias])
    return header, rows


def format_values(spec: GameSpec, result: ValueIteration, run) -> dict:
    return {
        "iterations": result.iterations,
        "values": _vector(spec, result.values),
        "mean_estimate": _vector(spec, result.mean_estimate),
        "spread": result.spread,
    }


def format_cell_map(spec: GameSpec, cell_map, run) -> dict:
    return cell_map.to_dict(spec)


def cell_map_csv(spec: GameSpec, cell_map, run) -> tuple[list[str], list[list]]:
    return cell_map.csv_header(spec), cell_map.csv_rows(spec)


def format_lines(spec: GameSpec, result, run) -> dict:
    slice_, lines = result
    return {
        "axes": list(slice_.labels),
        "box": [list(b) for b in slice_.box],
        "lines": [{**line.to_dict(spec), "crosses_box": line.crosses_box(slice_.box)} for line in lines],
        "tolerance": run.config.line_tol,
    }


def lines_csv(spec: GameSpec, result, run) -> tuple[list[str], list[list]]:
    slice_, lines = result
    return ["a", "b", "c", "crosses_box"], [
        [line.a, line.b, line.c, line.crosses_box(slice_.box)] for line in lines
    ]


def format_example(spec: None, result, run) -> dict:
    game, r = result
    return dump_game(game, r)


# --- Writers ---

def write_json(payload: dict, path: Path | None = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def write_csv(header: list[str], rows: list[list], path: Path | None = None) -> None:
    if path:
        with open(path, "w", newline="") as f:
            csv.writer(f).writerows([header, *rows])
    else:
        csv.writer(sys.stdout).writerows([header, *rows])


def write_diagnostic(diagnostic: dict[str, Any], stream: TextIO | None = None) -> None:
    """Machine-readable error report on stderr, one JSON object per line."""
    (stream or sys.stderr).write(json.dumps(diagnostic, sort_keys=True, default=str) + "\n")
