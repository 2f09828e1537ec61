"""Shared exception types."""


class OpinionNavError(Exception):
    """Base class for library errors."""


class ScenarioError(OpinionNavError):
    """Scenario file or configuration is invalid.

    Carries the list of violations found during validation.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DegenerateGeometryError(OpinionNavError):
    """Two agents occupy the same point; relative angles are undefined."""


class NumericalBlowupError(OpinionNavError):
    """Integration produced a non-finite value.

    The message names the offending state component; `component` carries the
    flat state-vector index (or a semantic name once mapped by the caller).
    """

    def __init__(self, message, component=None):
        self.component = component
        super().__init__(message)
