"""Linear stability of the coupled robot-human opinion/heading system.

The four linearized states are (z_r, z_h, eta_r, eta_h): two opinions and two
heading-style angles, each opinion driven by the other agent's angle through
the coupling gain gamma and each angle relaxing at rate k_p with opinion gain
beta. The Jacobian block structure splits into symmetric and antisymmetric
modes, giving a closed form for all four eigenvalues.
"""

from cmath import sqrt as csqrt
from typing import List

import numpy as np


def _check(d, alpha, gamma, beta, k_p):
    if d <= 0.0 or alpha <= 0.0:
        raise ValueError("d and alpha must be > 0")
    if beta <= 0.0:
        raise ValueError("beta must be > 0")
    if k_p <= 0.0:
        raise ValueError("k_p must be > 0")


def coupled_jacobian(d: float, alpha: float, gamma: float, beta: float,
                     k_p: float, u: float) -> np.ndarray:
    """Jacobian of the coupled system at the neutral equilibrium."""
    _check(d, alpha, gamma, beta, k_p)
    a = -d + alpha * u
    g = gamma * u
    return np.array([
        [a, 0.0, 0.0, g],
        [0.0, a, g, 0.0],
        [-k_p * beta, 0.0, -k_p, 0.0],
        [0.0, -k_p * beta, 0.0, -k_p],
    ])


def coupled_eigenvalues(d: float, alpha: float, gamma: float, beta: float,
                        k_p: float, u: float) -> List[complex]:
    """All four eigenvalues of the coupled linearization, closed form.

    lambda = ((a - k_p) +- sqrt((a + k_p)^2 +- 4*gamma*beta*k_p*u)) / 2 with
    a = -d + alpha*u; the inner sign selects the symmetric or antisymmetric
    mode pair.
    """
    _check(d, alpha, gamma, beta, k_p)
    if u < 0.0:
        raise ValueError("u must be >= 0")
    a = -d + alpha * u
    out = []
    for mode in (1.0, -1.0):
        disc = csqrt((a + k_p) ** 2 + mode * 4.0 * gamma * beta * k_p * u)
        for outer in (1.0, -1.0):
            lam = 0.5 * ((a - k_p) + outer * disc)
            if abs(lam.imag) < 1e-300:
                lam = complex(lam.real, 0.0)
            out.append(lam)
    return out


def coupled_critical_attention(d: float, alpha: float, gamma: float,
                               beta: float, k_p: float) -> float:
    """Attention where the coupled neutral equilibrium first goes unstable.

    d / (alpha + |gamma|*beta); the heading gain k_p shifts the other
    eigenvalues but not this threshold.
    """
    _check(d, alpha, gamma, beta, k_p)
    denom = alpha + abs(gamma) * beta
    return d / denom
