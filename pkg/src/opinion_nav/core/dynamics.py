"""Right-hand sides for the opinion-driven navigation controller.

Scalar functions use plain floats so the fixed-step integrator can call them
per stage without array overhead; the networked model is vectorized.
"""

from math import exp, sin, tan, tanh

import numpy as np

from .params import (ExponentialAttention, GeneralNetworkParams, HillAttention,
                     OpinionParams, OpinionState)

DEFAULT_ETA_CAP = 1.4  # rad, keeps tan() bounded near +-pi/2


def proxy_opinion(eta_h: float, eta_cap: float = DEFAULT_ETA_CAP) -> float:
    """Proxy for the human's opinion: tan of the clamped heading angle.

    The clamp keeps the proxy finite as |eta_h| approaches pi/2.
    """
    if not 0.0 < eta_cap < 1.5707963267948966:
        raise ValueError("eta_cap must be in (0, pi/2)")
    if eta_h > eta_cap:
        eta_h = eta_cap
    elif eta_h < -eta_cap:
        eta_h = -eta_cap
    return tan(eta_h)


def attention_hill(kappa: float, chi: float, law: HillAttention) -> float:
    """Evaluate the quasi-static Hill attention at cosine kappa, distance chi."""
    if chi < 0.0:
        raise ValueError("chi must be >= 0")
    if kappa <= 0.0:
        return law.u_lo
    s = (law.R * kappa) ** law.n
    return law.u_lo + (law.u_hi - law.u_lo) * s / (s + chi ** law.n)


def attention_ode_rhs(u: float, cos_angle: float, chi: float,
                      law: ExponentialAttention) -> float:
    """du/dt for the exponential attention law."""
    if chi < 0.0:
        raise ValueError("chi must be >= 0")
    return (exp(law.c * (law.R - chi) * cos_angle) - law.m * u) / law.tau_u


def opinion_rhs(z: float, u: float, z_h_proxy: float,
                params: OpinionParams) -> float:
    """dz/dt for one agent given its attention and the neighbor proxy."""
    return -params.d * z + u * tanh(params.alpha * z
                                    + params.gamma * z_h_proxy + params.b)


def robot_opinion_rhs(state: OpinionState, z_h_proxy: float,
                      params: OpinionParams) -> float:
    """dz/dt for the robot's opinion state."""
    return opinion_rhs(state.z, state.u, z_h_proxy, params)


def heading_rhs(z: float, phi_r: float, params: OpinionParams) -> float:
    """dtheta/dt: relax toward the goal bearing offset by the opinion.

    Zero when phi_r = -beta*tanh(z), i.e. the agent settles on a heading
    offset beta*tanh(z) to the left of the goal direction.
    """
    return params.k * sin(params.beta * tanh(z) + phi_r)


def general_opinion_rhs(z: np.ndarray, params: GeneralNetworkParams) -> np.ndarray:
    """dz/dt for the networked opinion model.

    dz_i = -d_i z_i + u_i tanh(alpha_i z_i + gamma_i sum_k a_ik z_k + b_i).
    """
    z = np.asarray(z, dtype=float)
    if z.shape != (params.n_agents,):
        raise ValueError(f"z must have length {params.n_agents}")
    coupling = params.adjacency @ z
    return -params.d * z + params.u * np.tanh(params.alpha * z
                                              + params.gamma * coupling
                                              + params.b)
