"""Single-axis stage dynamics.

Each stage axis is modeled as a second-order low-pass system

    G(s) = dc_gain * wn**2 / (s**2 + 2*zeta*wn*s + wn**2)

discretized exactly under a zero-order hold: the control signal is constant
between samples, so the discrete state matrices follow from the matrix
exponential of the continuous system over one sample period. This removes
integration error as a confound when comparing controllers. Piezo
hysteresis and creep are deliberately not modeled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

MAX_DT = 1e-3  # s; the model is meant for kHz-rate loops


@dataclass(frozen=True)
class PlantParams:
    """Continuous-time axis parameters.

    natural_frequency is in rad/s, damping_ratio dimensionless, dc_gain in
    nm per control unit.
    """

    natural_frequency: float
    damping_ratio: float
    dc_gain: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.natural_frequency) and self.natural_frequency > 0.0):
            raise ValueError(f"natural_frequency must be positive, got {self.natural_frequency!r}")
        if not (math.isfinite(self.damping_ratio) and self.damping_ratio > 0.0):
            raise ValueError(f"damping_ratio must be positive, got {self.damping_ratio!r}")
        if not (math.isfinite(self.dc_gain) and self.dc_gain > 0.0):
            raise ValueError(f"dc_gain must be positive, got {self.dc_gain!r}")


@dataclass
class PlantState:
    """Discrete plant state: position (nm) and velocity (nm/s)."""

    position: float = 0.0
    velocity: float = 0.0


@dataclass(frozen=True)
class DiscretePlant:
    """Exact ZOH discretization x[k+1] = A x[k] + B u[k], y = position."""

    a11: float
    a12: float
    a21: float
    a22: float
    b1: float
    b2: float
    dt: float
    params: PlantParams


def discretize(params: PlantParams, dt: float) -> DiscretePlant:
    """Exact zero-order-hold discretization of the axis model.

    Uses the matrix exponential of the augmented system [[A, B], [0, 0]]
    over dt, which yields both the discrete state matrix and the held-input
    column in one call. Deterministic: identical inputs give bit-identical
    matrices.
    """
    if not (math.isfinite(dt) and 0.0 < dt <= MAX_DT):
        raise ValueError(f"dt must be in (0, {MAX_DT}] s, got {dt!r}")
    wn = params.natural_frequency
    zeta = params.damping_ratio
    a = np.array([
        [0.0, 1.0],
        [-wn * wn, -2.0 * zeta * wn],
    ])
    b = np.array([0.0, params.dc_gain * wn * wn])
    aug = np.zeros((3, 3))
    aug[:2, :2] = a
    aug[:2, 2] = b
    m = expm(aug * dt)
    return DiscretePlant(
        a11=float(m[0, 0]), a12=float(m[0, 1]),
        a21=float(m[1, 0]), a22=float(m[1, 1]),
        b1=float(m[0, 2]), b2=float(m[1, 2]),
        dt=dt, params=params,
    )


def step(plant: DiscretePlant, state: PlantState, u: float) -> PlantState:
    """Advance the plant one sample under a held control value."""
    pos = plant.a11 * state.position + plant.a12 * state.velocity + plant.b1 * u
    vel = plant.a21 * state.position + plant.a22 * state.velocity + plant.b2 * u
    if not (math.isfinite(pos) and math.isfinite(vel)):
        raise FloatingPointError(
            f"plant state became non-finite (position={pos!r}, velocity={vel!r})")
    return PlantState(position=pos, velocity=vel)
