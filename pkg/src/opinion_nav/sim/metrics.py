"""Trajectory metrics: path length, curvature, separations, passing side."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

MIN_SEGMENT = 1e-6  # m, triples with shorter segments carry no curvature info


def path_length(x: np.ndarray, y: np.ndarray) -> float:
    """Sum of straight-line segment lengths along a sampled path."""
    if len(x) < 2:
        return 0.0
    return float(np.sum(np.hypot(np.diff(x), np.diff(y))))


def max_curvature(x: np.ndarray, y: np.ndarray) -> float:
    """Largest curvature of the circle through consecutive point triples.

    kappa = 2*|cross(b-a, c-a)| / (|b-a| |c-b| |c-a|); triples containing a
    segment shorter than MIN_SEGMENT are skipped. Returns 0.0 when no triple
    qualifies.
    """
    if len(x) < 3:
        return 0.0
    ax, ay = x[:-2], y[:-2]
    bx, by = x[1:-1], y[1:-1]
    cx, cy = x[2:], y[2:]
    abx, aby = bx - ax, by - ay
    bcx, bcy = cx - bx, cy - by
    acx, acy = cx - ax, cy - ay
    ab = np.hypot(abx, aby)
    bc = np.hypot(bcx, bcy)
    ac = np.hypot(acx, acy)
    cross = np.abs(abx * acy - aby * acx)
    ok = (ab >= MIN_SEGMENT) & (bc >= MIN_SEGMENT) & (ac >= MIN_SEGMENT)
    if not np.any(ok):
        return 0.0
    return float(np.max(2.0 * cross[ok] / (ab[ok] * bc[ok] * ac[ok])))


def min_separation(ax: np.ndarray, ay: np.ndarray,
                   bx: np.ndarray, by: np.ndarray) -> float:
    """Minimum distance between two equally sampled paths."""
    if len(ax) != len(bx):
        raise ValueError("paths must share sample times")
    if len(ax) == 0:
        return float("inf")
    return float(np.min(np.hypot(ax - bx, ay - by)))


def passed_left(robot_x: np.ndarray, robot_y: np.ndarray,
                human_x: np.ndarray, human_y: np.ndarray,
                start, goal) -> bool:
    """True when the robot deviates to its own left at closest approach.

    Side is the sign of the cross product of the start->goal direction with
    the robot's offset from that line, evaluated where the separation to this
    human is smallest.
    """
    d = np.hypot(robot_x - human_x, robot_y - human_y)
    i = int(np.argmin(d))
    gx, gy = goal[0] - start[0], goal[1] - start[1]
    ox, oy = robot_x[i] - start[0], robot_y[i] - start[1]
    return bool(gx * oy - gy * ox > 0.0)


@dataclass(frozen=True)
class TrialMetrics:
    """Headline numbers for one trial."""

    path_length: float
    max_curvature: float
    min_separation: float
    min_separation_per_human: Tuple[float, ...]
    time_to_goal: Optional[float]
    passed_left: Tuple[bool, ...]

    def to_dict(self) -> dict:
        return {
            "path_length": self.path_length,
            "max_curvature": self.max_curvature,
            "min_separation": self.min_separation,
            "min_separation_per_human": list(self.min_separation_per_human),
            "time_to_goal": self.time_to_goal,
            "passed_left": list(self.passed_left),
        }
