"""Contour-error geometry for biaxial tracking.

Everything here is pure and stateless. Positions and errors are in
nanometers, angles in radians. The contour error of a point is its signed
distance to the command *path* (not to the command point): positive outside
a circular path, and on straight paths positive on the right-hand side of
the travel direction. Circles are traversed counter-clockwise, so both
conventions agree (the outward normal is the right normal of travel).

For straight paths the error decomposes through the foot of perpendicular;
the same decomposition is expressed in direction-cosine form by a rank-1
projection matrix, which is what the controller applies sample by sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Point2:
    """A 2-D position in nanometers."""

    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("Point2 component", self.x, self.y)


@dataclass(frozen=True)
class AxialErrors:
    """Per-axis tracking errors e = command - actual, in nanometers."""

    e_x: float
    e_y: float

    def __post_init__(self) -> None:
        _require_finite("axial error", self.e_x, self.e_y)

    def norm(self) -> float:
        return math.hypot(self.e_x, self.e_y)


@dataclass(frozen=True)
class PathTangent:
    """Instantaneous direction of the command path.

    theta is the tilt angle of the path relative to the X axis. The
    direction cosines m_x = cos(theta), m_y = sin(theta) are derived, so
    m_x**2 + m_y**2 == 1 holds by construction.
    """

    theta: float

    def __post_init__(self) -> None:
        _require_finite("tangent angle", self.theta)

    @property
    def m_x(self) -> float:
        return math.cos(self.theta)

    @property
    def m_y(self) -> float:
        return math.sin(self.theta)


@dataclass(frozen=True)
class CircleSpec:
    """A command circle: center and radius (nm)."""

    center: Point2
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"circle radius must be positive, got {self.radius!r}")


@dataclass(frozen=True)
class ContourErrorVec:
    """Contour error resolved into axis components (nm).

    The vector is normal to the path tangent when produced by the
    projection construction; its magnitude is the unsigned contour error.
    """

    eps_x: float
    eps_y: float

    def magnitude(self) -> float:
        return math.hypot(self.eps_x, self.eps_y)


def circle_contour_error_exact(actual: Point2, circle: CircleSpec) -> float:
    """Signed distance from a point to a circle.

    Returns sqrt((x - cx)**2 + (y - cy)**2) - R: positive outside the
    circle, negative inside, zero on it. This is the ground truth for
    circular paths and is what the simulator logs on circle segments.
    """
    dx = actual.x - circle.center.x
    dy = actual.y - circle.center.y
    return math.hypot(dx, dy) - circle.radius


def circle_contour_error_linearized(
    e: AxialErrors,
    tangent: PathTangent,
    radius: float,
    second_order: bool = False,
) -> float:
    """First-order contour error for near-circle tracking.

    For a counter-clockwise circle the outward normal at tangent angle
    theta is (sin(theta), -cos(theta)), and expanding the exact signed
    distance to first order in the axial errors gives

        eps = e_y * cos(theta) - e_x * sin(theta)

    which is positive outside the circle, matching the exact formula.
    With second_order=True the (e_x**2 + e_y**2) / (2 R) correction term
    is added.
    """
    if not (math.isfinite(radius) and radius > 0.0):
        raise ValueError(f"radius must be positive, got {radius!r}")
    eps = e.e_y * tangent.m_x - e.e_x * tangent.m_y
    if second_order:
        eps += (e.e_x * e.e_x + e.e_y * e.e_y) / (2.0 * radius)
    return eps


def line_foot_of_perpendicular(command: Point2, actual: Point2, slope: float) -> Point2:
    """Orthogonal projection of the actual point onto the command line.

    The command line passes through `command` with slope m (dy/dx). The
    returned point M satisfies: M lies on the line, and (M - actual) is
    perpendicular to the line direction (1, m). Vertical lines have no
    finite slope; use projection_matrix with theta = +-90 degrees instead.
    """
    if not math.isfinite(slope):
        raise ValueError(f"slope must be finite, got {slope!r}; "
                         "use projection_matrix for vertical paths")
    denom = 1.0 + slope * slope
    x_m = (slope * slope * command.x
           + slope * (actual.y - command.y)
           + actual.x) / denom
    y_m = (slope * slope * actual.y
           + slope * (actual.x - command.x)
           + command.y) / denom
    return Point2(x_m, y_m)


def projection_matrix(tangent: PathTangent) -> np.ndarray:
    """Rank-1 matrix mapping axial errors to contour-error components.

    M(theta) = [[m_y**2, -m_x*m_y], [-m_x*m_y, m_x**2]] is the outer
    product of the path normal with itself: symmetric, idempotent,
    eigenvalues {0, 1}, null space spanned by the tangent (m_x, m_y).
    Applying it to the axial error vector keeps only the component normal
    to the path.
    """
    m_x = tangent.m_x
    m_y = tangent.m_y
    return np.array([
        [m_y * m_y, -m_x * m_y],
        [-m_x * m_y, m_x * m_x],
    ])


def contour_error_components(e: AxialErrors, tangent: PathTangent) -> ContourErrorVec:
    """Axis components of the contour error via the projection matrix.

    Equivalent to the foot-of-perpendicular construction for any
    non-vertical path, and well defined for vertical ones too. The result
    is normal to the tangent, so error purely along the path maps to zero.
    """
    m_x = tangent.m_x
    m_y = tangent.m_y
    eps_x = m_y * m_y * e.e_x - m_x * m_y * e.e_y
    eps_y = -m_x * m_y * e.e_x + m_x * m_x * e.e_y
    return ContourErrorVec(eps_x, eps_y)


def signed_line_contour_error(e: AxialErrors, tangent: PathTangent) -> float:
    """Signed perpendicular distance from the actual point to the command line.

    Positive when the actual point lies on the right-hand side of the
    travel direction, which for counter-clockwise circles is the outside.
    Its absolute value equals the magnitude of contour_error_components.
    """
    return e.e_y * tangent.m_x - e.e_x * tangent.m_y
