"""Bifurcation and linear-stability analysis of the opinion dynamics."""

from .bifurcation import (Branch, EquilibriumPoint, PitchforkDiagram,
                          Preference, critical_attention, equilibria_1d,
                          linearization_eigenvalue, pitchfork_diagram,
                          preference_direction, write_diagram_csv,
                          write_diagram_summary)
from .coupled import (coupled_critical_attention, coupled_eigenvalues,
                      coupled_jacobian)

__all__ = [
    "Branch",
    "EquilibriumPoint",
    "PitchforkDiagram",
    "Preference",
    "coupled_critical_attention",
    "coupled_eigenvalues",
    "coupled_jacobian",
    "critical_attention",
    "equilibria_1d",
    "linearization_eigenvalue",
    "pitchfork_diagram",
    "preference_direction",
    "write_diagram_csv",
    "write_diagram_summary",
]
