"""Relative geometry between a robot, a human, and the robot's goal.

Conventions: poses are (x, y, theta) with theta measured from the +x axis,
counterclockwise positive. eta_r is the bearing of the human in the robot's
frame (positive = human on the robot's left). eta_h is the human's heading
measured from the human-to-robot line (positive = the human bears to its own
left, drifting toward the robot's right). phi_r is the bearing of the goal in
the robot's frame. kappa = cos(eta_h) is positive only while the human's
motion closes on the robot.
"""

from dataclasses import dataclass
from math import atan2, cos, hypot, pi, remainder, tau

from ..errors import DegenerateGeometryError

_COINCIDENT_EPS = 1e-12  # m


def wrap_angle(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    a = remainder(angle, tau)
    if a <= -pi:
        a += tau
    return a


@dataclass(frozen=True)
class Observation:
    """Instantaneous robot-human-goal geometry."""

    chi: float    # robot-human distance, m
    eta_r: float  # bearing of human in robot frame, rad
    eta_h: float  # human heading relative to the human->robot line, rad
    phi_r: float  # bearing of goal in robot frame, rad
    kappa: float  # cos(eta_h)


def geometry_tuple(xr: float, yr: float, theta_r: float,
                   xh: float, yh: float, theta_h: float,
                   gx: float, gy: float):
    """(chi, eta_r, eta_h, phi_r, kappa) as plain floats.

    Allocation-free variant of relative_geometry for integrator stages.
    """
    dx = xh - xr
    dy = yh - yr
    chi = hypot(dx, dy)
    if chi < _COINCIDENT_EPS:
        raise DegenerateGeometryError("robot and human positions coincide")
    eta_r = wrap_angle(atan2(dy, dx) - theta_r)
    eta_h = wrap_angle(theta_h - atan2(-dy, -dx))
    phi_r = wrap_angle(atan2(gy - yr, gx - xr) - theta_r)
    return chi, eta_r, eta_h, phi_r, cos(eta_h)


def relative_geometry(robot_pose, human_pose, goal) -> Observation:
    """Compute the observation the controller runs on.

    robot_pose and human_pose are (x, y, theta); goal is (x, y). Raises
    DegenerateGeometryError when robot and human coincide.
    """
    xr, yr, theta_r = robot_pose
    xh, yh, theta_h = human_pose
    chi, eta_r, eta_h, phi_r, kappa = geometry_tuple(
        xr, yr, theta_r, xh, yh, theta_h, goal[0], goal[1])
    return Observation(chi=chi, eta_r=eta_r, eta_h=eta_h, phi_r=phi_r,
                       kappa=kappa)
