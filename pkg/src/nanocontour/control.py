"""Per-axis PI tracking control plus the cross-coupling gain stage.

The control law for each sample is

    v_rx = (k_px + k_ix * integral) applied to e_x  +  k_dx * eps_x
    v_ry = (k_py + k_iy * integral) applied to e_y  +  k_dy * eps_y

where (eps_x, eps_y) is the axial error projected onto the path normal.
The PI terms chase the per-axis tracking errors; the coupling terms feed
the shared contour error back into both axes, weighted by the path
direction, which is what couples the axes. With k_dx = k_dy = 0 the two
loops are exactly independent PI controllers.

Integrals use backward Euler: the accumulator is updated before the output
is formed. Anti-windup is conditional integration: when a saturation bound
is active and the summed output exceeds it, the accumulator update for that
sample is discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import AxialErrors, ContourErrorVec, PathTangent, contour_error_components


@dataclass(frozen=True)
class Gains:
    """The six controller gains; all must be non-negative."""

    k_px: float
    k_ix: float
    k_py: float
    k_iy: float
    k_dx: float
    k_dy: float

    def __post_init__(self) -> None:
        for name in ("k_px", "k_ix", "k_py", "k_iy", "k_dx", "k_dy"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"gain {name} must be >= 0, got {v!r}")

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.k_px, self.k_ix, self.k_py, self.k_iy, self.k_dx, self.k_dy)


@dataclass(frozen=True)
class PIState:
    """Integrator state of one PI controller (nm * s)."""

    integral_accumulator: float = 0.0


@dataclass(frozen=True)
class ControlSignal:
    """Controller outputs for both axes, in control units."""

    v_rx: float
    v_ry: float


def pi_step(e: float, state: PIState, k_p: float, k_i: float, dt: float) -> tuple[float, PIState]:
    """One backward-Euler PI update: accumulate, then output."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    acc = state.integral_accumulator + e * dt
    return k_p * e + k_i * acc, PIState(acc)


def coupled_control_step(
    e: AxialErrors,
    tangent: PathTangent,
    gains: Gains,
    states: tuple[PIState, PIState],
    dt: float,
) -> tuple[ControlSignal, tuple[PIState, PIState]]:
    """One sample of the coupled control law.

    Computes the contour-error components from the axial errors and the
    path tangent, then adds the coupling contribution on top of each PI
    output. Expanding the projection shows the X output equals
    (k_px + k_ix/s + m_y**2 k_dx) e_x - (m_x m_y k_dx) e_y, i.e. the
    coupling acts as a direction-dependent gain on both errors.
    """
    eps: ContourErrorVec = contour_error_components(e, tangent)
    state_x, state_y = states
    u_x, state_x = pi_step(e.e_x, state_x, gains.k_px, gains.k_ix, dt)
    u_y, state_y = pi_step(e.e_y, state_y, gains.k_py, gains.k_iy, dt)
    v_rx = u_x + gains.k_dx * eps.eps_x
    v_ry = u_y + gains.k_dy * eps.eps_y
    if not (math.isfinite(v_rx) and math.isfinite(v_ry)):
        raise FloatingPointError(
            f"control signal became non-finite (v_rx={v_rx!r}, v_ry={v_ry!r})")
    return ControlSignal(v_rx, v_ry), (state_x, state_y)
