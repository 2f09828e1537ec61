"""Opinion-dynamics navigation: controller core, simulator, analysis, service."""

__version__ = "0.1.0"

from .errors import (DegenerateGeometryError, NumericalBlowupError,
                     OpinionNavError, ScenarioError)

__all__ = [
    "__version__",
    "DegenerateGeometryError",
    "NumericalBlowupError",
    "OpinionNavError",
    "ScenarioError",
]
