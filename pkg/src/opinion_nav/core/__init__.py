"""Opinion-dynamics controller core: parameters, geometry, right-hand sides."""

from .dynamics import (DEFAULT_ETA_CAP, attention_hill, attention_ode_rhs,
                       general_opinion_rhs, heading_rhs, opinion_rhs,
                       proxy_opinion, robot_opinion_rhs)
from .geometry import Observation, relative_geometry, wrap_angle
from .params import (AttentionLaw, ExponentialAttention, GeneralNetworkParams,
                     HillAttention, OpinionParams, OpinionState)

__all__ = [
    "DEFAULT_ETA_CAP",
    "AttentionLaw",
    "ExponentialAttention",
    "GeneralNetworkParams",
    "HillAttention",
    "Observation",
    "OpinionParams",
    "OpinionState",
    "attention_hill",
    "attention_ode_rhs",
    "general_opinion_rhs",
    "heading_rhs",
    "opinion_rhs",
    "proxy_opinion",
    "relative_geometry",
    "robot_opinion_rhs",
    "wrap_angle",
]
