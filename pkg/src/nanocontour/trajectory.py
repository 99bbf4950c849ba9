"""Reference path generation with analytic tangent angles.

Two benchmark scenarios drive the whole artifact: a straight approach line
followed by repeated circles, entering either radially (line_then_circle,
where the travel direction jumps at the junction) or along the circle
tangent (tangent_then_circle, where the velocity vector is continuous by
construction). Circles are traversed counter-clockwise with the standard
parameterization x = cx + R cos(phi), y = cy + R sin(phi); the tangent
angle is phi + 90 degrees. Tangents are produced analytically, never by
differencing positions.

The approach line is traversed at the circular feed rate 2*pi*f*R, so its
length follows from the approach duration. Default geometry anchors the
line start at the origin; the circle center can be overridden through the
path spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import CircleSpec, PathTangent, Point2

PATH_KINDS = ("line_then_circle", "tangent_then_circle", "circle_only", "line_only")

_T_SLACK = 1e-9  # s; tolerance for t-domain checks against rounded grids


@dataclass(frozen=True)
class PathSpec:
    """A benchmark path: optional straight approach plus command circles.

    approach_angle is the tilt of the approach line in radians. frequency
    is the circular feed in Hz; one revolution takes 1/frequency seconds.
    For line_only the circle is never visited but its radius still sets
    the feed rate.
    """

    kind: str
    circle: CircleSpec
    frequency: float
    approach_duration: float
    revolutions: int
    approach_angle: float

    def __post_init__(self) -> None:
        if self.kind not in PATH_KINDS:
            raise ValueError(f"unknown path kind {self.kind!r}; expected one of {PATH_KINDS}")
        if not (math.isfinite(self.frequency) and self.frequency > 0.0):
            raise ValueError(f"frequency must be positive, got {self.frequency!r}")
        if not (math.isfinite(self.approach_duration) and self.approach_duration >= 0.0):
            raise ValueError(f"approach_duration must be >= 0, got {self.approach_duration!r}")
        if self.revolutions < 1:
            raise ValueError(f"revolutions must be >= 1, got {self.revolutions!r}")
        if not math.isfinite(self.approach_angle):
            raise ValueError(f"approach_angle must be finite, got {self.approach_angle!r}")
        if self.kind == "circle_only" and self.approach_duration != 0.0:
            raise ValueError("circle_only paths must have approach_duration = 0")
        if self.kind == "line_only" and self.approach_duration <= 0.0:
            raise ValueError("line_only paths need approach_duration > 0")

    @property
    def has_circle(self) -> bool:
        return self.kind != "line_only"

    @property
    def has_approach(self) -> bool:
        return self.kind != "circle_only" and self.approach_duration > 0.0

    @property
    def duration(self) -> float:
        total = self.approach_duration
        if self.has_circle:
            total += self.revolutions / self.frequency
        return total

    @property
    def speed(self) -> float:
        """Feed rate in nm/s, shared by line and circle segments."""
        return 2.0 * math.pi * self.frequency * self.circle.radius


@dataclass(frozen=True)
class PathSample:
    """Reference position and analytic tangent at one instant."""

    t: float
    reference: Point2
    tangent: PathTangent
    segment: str  # "approach" or "circle"


def _entry_phase(spec: PathSpec) -> float:
    """Circle angle of the entry point E (where the circle segment starts).

    Radial entry (line_then_circle, circle_only, line_only anchoring): the
    approach heads straight at the center, so E sits opposite the travel
    direction. Tangent entry: E is the point whose CCW tangent equals the
    approach direction, 90 degrees clockwise from it.
    """
    if spec.kind == "tangent_then_circle":
        return spec.approach_angle - 0.5 * math.pi
    return spec.approach_angle + math.pi


def _entry_point(spec: PathSpec) -> tuple[float, float]:
    phi0 = _entry_phase(spec)
    c = spec.circle.center
    return (c.x + spec.circle.radius * math.cos(phi0),
            c.y + spec.circle.radius * math.sin(phi0))


def _line_start(spec: PathSpec) -> tuple[float, float]:
    ex, ey = _entry_point(spec)
    length = spec.speed * spec.approach_duration
    return (ex - length * math.cos(spec.approach_angle),
            ey - length * math.sin(spec.approach_angle))


def default_center(kind: str, radius: float, frequency: float,
                   approach_duration: float, approach_angle: float) -> Point2:
    """Circle center that anchors the approach-line start at the origin."""
    speed = 2.0 * math.pi * frequency * radius
    length = speed * approach_duration if kind != "circle_only" else 0.0
    dx = math.cos(approach_angle)
    dy = math.sin(approach_angle)
    ex, ey = length * dx, length * dy  # entry point when the start is the origin
    if kind == "tangent_then_circle":
        # center 90 degrees left of travel, so CCW motion continues the line
        return Point2(ex - radius * dy, ey + radius * dx)
    return Point2(ex + radius * dx, ey + radius * dy)


def sample(spec: PathSpec, t: float) -> PathSample:
    """Evaluate the reference path at time t.

    Piecewise analytic: a constant-velocity line for t < approach_duration,
    then the circle at angular rate 2*pi*frequency. The junction sample
    (t exactly at the approach end) belongs to the circle segment. Raises
    ValueError for t outside [0, duration].
    """
    total = spec.duration
    if not math.isfinite(t) or t < -_T_SLACK or t > total + _T_SLACK:
        raise ValueError(f"t={t!r} outside path time domain [0, {total}]")
    t = min(max(t, 0.0), total)
    t_a = spec.approach_duration if spec.kind != "circle_only" else 0.0

    on_circle = spec.has_circle and t >= t_a
    if not on_circle:
        sx, sy = _line_start(spec)
        x = sx + spec.speed * t * math.cos(spec.approach_angle)
        y = sy + spec.speed * t * math.sin(spec.approach_angle)
        return PathSample(t, Point2(x, y), PathTangent(spec.approach_angle), "approach")

    phi = _entry_phase(spec) + 2.0 * math.pi * spec.frequency * (t - t_a)
    c = spec.circle.center
    x = c.x + spec.circle.radius * math.cos(phi)
    y = c.y + spec.circle.radius * math.sin(phi)
    return PathSample(t, Point2(x, y), PathTangent(phi + 0.5 * math.pi), "circle")


def sample_grid(spec: PathSpec, t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized path evaluation over a time grid.

    Returns (x_ref, y_ref, theta, on_circle) arrays matching t. Same
    piecewise formulas as sample(); intended for the simulation engine,
    which owns the grid construction.
    """
    t = np.asarray(t, dtype=np.float64)
    t_a = spec.approach_duration if spec.kind != "circle_only" else 0.0
    on_circle = np.logical_and(spec.has_circle, t >= t_a)

    x = np.empty_like(t)
    y = np.empty_like(t)
    theta = np.empty_like(t)

    line = ~on_circle
    if line.any():
        sx, sy = _line_start(spec)
        x[line] = sx + spec.speed * t[line] * math.cos(spec.approach_angle)
        y[line] = sy + spec.speed * t[line] * math.sin(spec.approach_angle)
        theta[line] = spec.approach_angle
    if on_circle.any():
        phi = _entry_phase(spec) + 2.0 * math.pi * spec.frequency * (t[on_circle] - t_a)
        x[on_circle] = spec.circle.center.x + spec.circle.radius * np.cos(phi)
        y[on_circle] = spec.circle.center.y + spec.circle.radius * np.sin(phi)
        theta[on_circle] = phi + 0.5 * math.pi
    return x, y, theta, on_circle


def _benchmark_spec(kind: str) -> PathSpec:
    radius = 400.0          # nm (800 nm diameter)
    frequency = 1.0         # Hz
    approach_duration = 2.0  # s
    revolutions = 4
    angle = math.radians(45.0)
    center = default_center(kind, radius, frequency, approach_duration, angle)
    return PathSpec(
        kind=kind,
        circle=CircleSpec(center=center, radius=radius),
        frequency=frequency,
        approach_duration=approach_duration,
        revolutions=revolutions,
        approach_angle=angle,
    )


def line_then_circle_benchmark() -> PathSpec:
    """2 s straight approach at 45 degrees, then 4 circles of 800 nm diameter at 1 Hz."""
    return _benchmark_spec("line_then_circle")


def tangent_then_circle_benchmark() -> PathSpec:
    """Like line_then_circle_benchmark but entering along the circle tangent."""
    return _benchmark_spec("tangent_then_circle")
