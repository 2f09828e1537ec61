"""Fixed-step fourth-order Runge-Kutta integration."""

from math import isfinite
from typing import Callable, Optional, Sequence

from ..errors import NumericalBlowupError

Rhs = Callable[[Sequence[float]], Sequence[float]]


def _checked(rhs: Rhs, y: Sequence[float], names: Optional[Sequence[str]]):
    try:
        k = rhs(y)
    except OverflowError as exc:
        raise NumericalBlowupError(f"derivative overflow: {exc}") from exc
    for i, v in enumerate(k):
        if not isfinite(v):
            name = names[i] if names is not None else f"y[{i}]"
            raise NumericalBlowupError(
                f"non-finite derivative for component '{name}'", component=i)
    return k


def rk4_step(y: Sequence[float], rhs: Rhs, dt: float,
             names: Optional[Sequence[str]] = None) -> list:
    """Advance y by one classical RK4 step of size dt.

    rhs maps a state sequence to a derivative sequence of the same length.
    Raises NumericalBlowupError naming the offending component when any stage
    produces a non-finite derivative.
    """
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    n = len(y)
    half = 0.5 * dt
    k1 = _checked(rhs, y, names)
    k2 = _checked(rhs, [y[i] + half * k1[i] for i in range(n)], names)
    k3 = _checked(rhs, [y[i] + half * k2[i] for i in range(n)], names)
    k4 = _checked(rhs, [y[i] + dt * k3[i] for i in range(n)], names)
    sixth = dt / 6.0
    return [y[i] + sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            for i in range(n)]
