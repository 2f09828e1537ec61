"""Equilibrium and bifurcation structure of the scalar opinion dynamics.

All functions treat the one-dimensional model dz/dt = -d*z + u*tanh(alpha*z
+ c), where c lumps the social input and bias. Roots are found by sign-change
bracketing on a symmetric scan interval followed by bisection; stability is
the sign of the derivative of the right-hand side at the root.
"""

import csv
import json
from dataclasses import dataclass
from enum import Enum
from math import cosh, tan, tanh
from typing import List, Optional, Sequence

import numpy as np

_SCAN_POINTS = 2001
_BISECT_TOL = 1e-12        # interval width; leaves |f| well under 1e-10
_DEGENERATE_SLOPE = 1e-8   # |f'(z)| below this marks a tangency
_DEDUP_TOL = 1e-8


def critical_attention(d: float, alpha: float) -> float:
    """Attention at which the neutral equilibrium loses stability: d/alpha."""
    if d <= 0.0 or alpha <= 0.0:
        raise ValueError("d and alpha must be > 0")
    return d / alpha


def linearization_eigenvalue(d: float, alpha: float, u: float) -> float:
    """Eigenvalue of the neutral equilibrium of the unbiased scalar model."""
    if d <= 0.0 or alpha <= 0.0:
        raise ValueError("d and alpha must be > 0")
    if u < 0.0:
        raise ValueError("u must be >= 0")
    return -d + alpha * u


@dataclass(frozen=True)
class EquilibriumPoint:
    """A root of the scalar dynamics with its local stability."""

    z: float
    stable: bool
    u: float
    c: float
    degenerate: bool = False


def _f(z: float, d: float, alpha: float, u: float, c: float) -> float:
    return -d * z + u * tanh(alpha * z + c)


def _fprime(z: float, d: float, alpha: float, u: float, c: float) -> float:
    sech = 1.0 / cosh(alpha * z + c)
    return -d + u * alpha * sech * sech


def _bisect(lo: float, hi: float, d, alpha, u, c) -> float:
    flo = _f(lo, d, alpha, u, c)
    for _ in range(200):
        if hi - lo < _BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        fmid = _f(mid, d, alpha, u, c)
        if fmid == 0.0:
            return mid
        if (flo < 0.0) == (fmid < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def equilibria_1d(d: float, alpha: float, u: float,
                  c: float) -> List[EquilibriumPoint]:
    """All real equilibria of dz/dt = -d*z + u*tanh(alpha*z + c), sorted by z.

    Every root satisfies |z| <= (u + |c| + 1)/d, so the scan is confined to
    that interval. Stability is f'(z) < 0; roots with |f'(z)| below a small
    threshold are flagged degenerate (fold tangency) rather than counted
    against the one-or-three structure.
    """
    if d <= 0.0 or alpha <= 0.0:
        raise ValueError("d and alpha must be > 0")
    if u < 0.0:
        raise ValueError("u must be >= 0")
    bound = (u + abs(c) + 1.0) / d
    grid = np.linspace(-bound, bound, _SCAN_POINTS)
    vals = -d * grid + u * np.tanh(alpha * grid + c)
    roots = []
    for i in range(len(grid) - 1):
        a, b = float(vals[i]), float(vals[i + 1])
        if a == 0.0:
            roots.append(float(grid[i]))
        elif (a < 0.0) != (b < 0.0):
            roots.append(_bisect(float(grid[i]), float(grid[i + 1]),
                                 d, alpha, u, c))
    if len(grid) and float(vals[-1]) == 0.0:
        roots.append(float(grid[-1]))
    points = []
    for z in roots:
        if points and abs(z - points[-1].z) < _DEDUP_TOL:
            continue
        slope = _fprime(z, d, alpha, u, c)
        points.append(EquilibriumPoint(z=z, stable=slope < 0.0, u=u, c=c,
                                       degenerate=abs(slope)
                                       < _DEGENERATE_SLOPE))
    return points


class Preference(Enum):
    LEFT = "left"
    RIGHT = "right"
    NEUTRAL = "neutral"


def preference_direction(gamma: float, eta_h: float, b: float) -> Preference:
    """Side the unfolded pitchfork favors: sign of gamma*tan(eta_h) + b."""
    if not -1.5707963267948966 < eta_h < 1.5707963267948966:
        raise ValueError("eta_h must be in (-pi/2, pi/2)")
    c = gamma * tan(eta_h) + b
    if c > 0.0:
        return Preference.LEFT
    if c < 0.0:
        return Preference.RIGHT
    return Preference.NEUTRAL


@dataclass
class Branch:
    """A continued family of equilibria across attention samples."""

    branch_id: int
    u: List[float]
    points: List[EquilibriumPoint]


@dataclass
class PitchforkDiagram:
    """Equilibrium branches of the scalar model over an attention sweep."""

    d: float
    alpha: float
    c: float
    u_samples: np.ndarray
    branches: List[Branch]
    u_star: Optional[float]  # first sample where the root count jumps 1 -> 3


def pitchfork_diagram(d: float, alpha: float, u_values: Sequence[float],
                      c: float = 0.0) -> PitchforkDiagram:
    """Sweep attention and continue equilibrium branches by nearest z.

    u_values must be increasing with at least 50 samples. Roots unmatched to
    an existing branch open a new one (a fold introduces two). u_star is the
    first sample at which the non-degenerate root count passes 1 -> 3, None
    if that never happens.
    """
    u_values = np.asarray(list(u_values), dtype=float)
    if len(u_values) < 50:
        raise ValueError("need at least 50 attention samples")
    if np.any(np.diff(u_values) <= 0.0):
        raise ValueError("u_values must be strictly increasing")
    if np.any(u_values < 0.0):
        raise ValueError("attention must be >= 0")
    branches: List[Branch] = []
    active: List[Branch] = []
    u_star = None
    prev_count = None
    for u in u_values:
        points = equilibria_1d(d, alpha, float(u), c)
        count = sum(1 for p in points if not p.degenerate)
        # a sample landing on the fold tangency can report 2 roots; treat any
        # first passage below-3 -> 3 as the branching point
        if u_star is None and prev_count is not None \
                and prev_count < 3 and count >= 3:
            u_star = float(u)
        prev_count = count
        unmatched = list(points)
        next_active = []
        # nearest-z greedy continuation against currently active branches
        pairs = []
        for br in active:
            last = br.points[-1].z
            for p in unmatched:
                pairs.append((abs(p.z - last), br, p))
        pairs.sort(key=lambda item: item[0])
        taken_b, taken_p = set(), set()
        for dist, br, p in pairs:
            if id(br) in taken_b or id(p) in taken_p:
                continue
            taken_b.add(id(br))
            taken_p.add(id(p))
            br.u.append(float(u))
            br.points.append(p)
            next_active.append(br)
        for p in unmatched:
            if id(p) in taken_p:
                continue
            br = Branch(branch_id=len(branches), u=[float(u)], points=[p])
            branches.append(br)
            next_active.append(br)
        active = next_active
    return PitchforkDiagram(d=d, alpha=alpha, c=c, u_samples=u_values,
                            branches=branches, u_star=u_star)


def write_diagram_csv(diagram: PitchforkDiagram, path) -> None:
    """Rows (u, z, stable, branch_id) sorted by branch then attention."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["u", "z", "stable", "branch_id"])
        for br in diagram.branches:
            for u, p in zip(br.u, br.points):
                w.writerow([repr(u), repr(p.z), int(p.stable), br.branch_id])


def write_diagram_summary(diagram: PitchforkDiagram, path) -> None:
    payload = {
        "u_star": diagram.u_star,
        "c": diagram.c,
        "unfolded": diagram.c != 0.0,
        "params": {"d": diagram.d, "alpha": diagram.alpha},
        "u_min": float(diagram.u_samples[0]),
        "u_max": float(diagram.u_samples[-1]),
        "samples": int(len(diagram.u_samples)),
        "branches": len(diagram.branches),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
