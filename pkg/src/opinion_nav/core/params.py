"""Parameter and state containers for the opinion controller.

Angles are radians, distances meters, rates 1/s throughout.
"""

from dataclasses import dataclass
from math import pi
from typing import Union

import numpy as np


@dataclass(frozen=True)
class HillAttention:
    """Quasi-static saturating attention law.

    u(kappa, chi) = u_lo + (u_hi - u_lo) * (R*kappa)^n / ((R*kappa)^n + chi^n)
    for kappa > 0, and u_lo when the interaction cosine kappa is non-positive.
    The lag is taken as zero, so u is recomputed from the current geometry
    rather than integrated.
    """

    u_lo: float
    u_hi: float
    R: float
    n: float

    def __post_init__(self):
        if self.u_lo < 0.0:
            raise ValueError("u_lo must be >= 0")
        if self.u_hi < self.u_lo:
            raise ValueError("u_hi must be >= u_lo")
        if self.R <= 0.0:
            raise ValueError("R must be > 0")
        if self.n <= 0.0:
            raise ValueError("n must be > 0")


@dataclass(frozen=True)
class ExponentialAttention:
    """First-order attention lag driven by an exponential of urgency.

    tau_u * du/dt = -m*u + exp(c * (R - chi) * cos_angle), with u carried as
    an integrated state.
    """

    tau_u: float
    m: float
    c: float
    R: float

    def __post_init__(self):
        if self.tau_u <= 0.0:
            raise ValueError("tau_u must be > 0")
        if self.m <= 0.0:
            raise ValueError("m must be > 0")
        if self.c <= 0.0:
            raise ValueError("c must be > 0")
        if self.R <= 0.0:
            raise ValueError("R must be > 0")


AttentionLaw = Union[HillAttention, ExponentialAttention]


@dataclass(frozen=True)
class OpinionParams:
    """Gains for one opinion-driven unicycle agent.

    d: opinion damping, alpha: self-reinforcement gain, gamma: social
    coupling gain, b: bias (positive favors a left pass), beta: heading
    offset at saturated opinion, k: heading relaxation gain.
    """

    d: float
    alpha: float
    gamma: float
    b: float
    beta: float
    k: float
    attention: AttentionLaw

    def __post_init__(self):
        if self.d <= 0.0:
            raise ValueError("d must be > 0")
        if self.alpha <= 0.0:
            raise ValueError("alpha must be > 0")
        if self.k <= 0.0:
            raise ValueError("k must be > 0")
        if not 0.0 < self.beta <= pi / 2:
            raise ValueError("beta must be in (0, pi/2]")


@dataclass(frozen=True)
class OpinionState:
    """Opinion z (sign picks the passing side; positive = left) and attention u."""

    z: float
    u: float

    def __post_init__(self):
        if self.u < 0.0:
            raise ValueError("attention u must be >= 0")


@dataclass
class GeneralNetworkParams:
    """Parameters for the n-agent networked opinion model.

    adjacency holds inter-agent weights with a zero diagonal; d, u, alpha,
    gamma, b are per-agent arrays of length n_agents.
    """

    adjacency: np.ndarray
    d: np.ndarray
    u: np.ndarray
    alpha: np.ndarray
    gamma: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.adjacency = np.asarray(self.adjacency, dtype=float)
        for name in ("d", "u", "alpha", "gamma", "b"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))
        n = self.adjacency.shape[0]
        if self.adjacency.shape != (n, n):
            raise ValueError("adjacency must be square")
        if np.any(np.diag(self.adjacency) != 0.0):
            raise ValueError("adjacency diagonal must be zero")
        for name in ("d", "u", "alpha", "gamma", "b"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} must have length {n}")
        if np.any(self.d <= 0.0):
            raise ValueError("d must be > 0")
        if np.any(self.u < 0.0):
            raise ValueError("u must be >= 0")

    @property
    def n_agents(self) -> int:
        return self.adjacency.shape[0]
