"""Realtime human-in-the-loop session server."""

from .app import bundled_scenarios, create_app
from .models import (AckMessage, DoneMessage, ErrorMessage, HealthResponse,
                     HumanStateModel, InputMessage, PointModel,
                     RobotStateModel, StateMessage, StepMessage)
from .session import (DEFAULT_BROADCAST_RATE, SessionEngine, replay_session,
                      validate_live_scenario)

__all__ = [
    "AckMessage",
    "DEFAULT_BROADCAST_RATE",
    "DoneMessage",
    "ErrorMessage",
    "HealthResponse",
    "HumanStateModel",
    "InputMessage",
    "PointModel",
    "RobotStateModel",
    "SessionEngine",
    "StateMessage",
    "StepMessage",
    "bundled_scenarios",
    "create_app",
    "replay_session",
    "validate_live_scenario",
]
