"""File writers for trial outputs.

Formats are part of the external contract: floats are written with repr
(shortest round-trip form), so identical results give identical bytes.
"""

import csv
import json

from .runner import TrialResult

TRAJECTORY_HEADER = ["t", "agent", "x", "y", "theta", "z", "u", "focal"]


def _cells(series, i):
    return [repr(float(series.x[i])), repr(float(series.y[i])),
            repr(float(series.theta[i])), repr(float(series.z[i])),
            repr(float(series.u[i]))]


def write_trajectory_csv(result: TrialResult, path) -> None:
    """One row per agent per sample: t, agent, x, y, theta, z, u, focal.

    focal is filled on robot rows only (-1 while no human is focal).
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRAJECTORY_HEADER)
        names = [f"human{i}" for i in range(len(result.humans))]
        for i, t in enumerate(result.t):
            r = result.robot
            w.writerow([repr(float(t)), "robot", *_cells(r, i),
                        int(result.focal[i])])
            for name, h in zip(names, result.humans):
                w.writerow([repr(float(t)), name, *_cells(h, i), ""])


def write_opinion_csv(result: TrialResult, path) -> None:
    """Robot opinion/attention series: t, z, u, focal."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "z", "u", "focal"])
        r = result.robot
        for i, t in enumerate(result.t):
            w.writerow([repr(float(t)), repr(float(r.z[i])),
                        repr(float(r.u[i])), int(result.focal[i])])


def write_metrics_json(result: TrialResult, path) -> None:
    payload = {
        "outcome": result.outcome,
        "seed": result.scenario.seed,
        "z0": result.z0,
        "metrics": result.metrics.to_dict(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
