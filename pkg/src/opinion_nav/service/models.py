"""Wire-format models for the realtime session protocol.

Message field names and units (SI, radians) are a frozen contract with the
browser client. Additions (ack, error, step) are compatible extensions:
clients may ignore message types they do not know.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class RobotStateModel(BaseModel):
    x: float
    y: float
    theta: float
    z: float
    u: float
    focal: Optional[int] = None


class HumanStateModel(BaseModel):
    x: float
    y: float
    theta: float


class PointModel(BaseModel):
    x: float
    y: float


class StateMessage(BaseModel):
    type: Literal["state"] = "state"
    t: float
    robot: RobotStateModel
    humans: List[HumanStateModel]
    goal: PointModel


class DoneMessage(BaseModel):
    type: Literal["done"] = "done"
    outcome: Literal["reached", "collision", "timeout"]
    metrics: dict


class InputMessage(BaseModel):
    """Client command for the externally driven human."""

    type: Literal["input"] = "input"
    mode: Literal["heading", "target", "stop"]
    theta: Optional[float] = None
    x: Optional[float] = None
    y: Optional[float] = None
    speed_fraction: float = Field(default=1.0)


class StepMessage(BaseModel):
    """Advance n ticks; only honored when the session is opened unpaced."""

    type: Literal["step"] = "step"
    n: int = Field(default=1, ge=1, le=100000)


class AckMessage(BaseModel):
    type: Literal["ack"] = "ack"
    tick: int
    clamped: bool = False


class ErrorMessage(BaseModel):
    type: Literal["error"] = "error"
    message: str


class HealthResponse(BaseModel):
    version: str
