"""Exhaustive grid sweep over controller gains.

A plain cartesian grid, deterministic and transparent: every point is one
simulation, unstable points are kept with an infinite objective so the
stability boundary stays visible in the output, and the reported optimum
is independent of enumeration order (ties break toward the
lexicographically smallest gain vector).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .control import Gains
from .engine import Metrics, SimConfig, SimulationAbort, metrics, run

GAIN_NAMES = ("k_px", "k_ix", "k_py", "k_iy", "k_dx", "k_dy")
OBJECTIVES = ("rms_contour", "max_contour", "rms_axial")
SCOPES = ("full", "final_revolution")

DEFAULT_MAX_POINTS = 100_000


@dataclass(frozen=True)
class GainRange:
    """Inclusive linear range for one gain."""

    min: float
    max: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count!r}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ValueError("range bounds must be finite")
        if self.min < 0.0 or self.max < self.min:
            raise ValueError(f"need 0 <= min <= max, got [{self.min!r}, {self.max!r}]")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.min])
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Which gains to sweep, and what to minimize.

    Gains absent from `ranges` keep their base-config values. The grid is
    refused outright when larger than max_points.
    """

    ranges: dict[str, GainRange] = field(default_factory=dict)
    objective: str = "rms_contour"
    scope: str = "final_revolution"
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self) -> None:
        if not self.ranges:
            raise ValueError("sweep needs at least one gain range")
        for name in self.ranges:
            if name not in GAIN_NAMES:
                raise ValueError(f"unknown gain {name!r}; expected one of {GAIN_NAMES}")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}; expected one of {OBJECTIVES}")
        if self.scope not in SCOPES:
            raise ValueError(f"unknown scope {self.scope!r}; expected one of {SCOPES}")

    @property
    def grid_size(self) -> int:
        size = 1
        for r in self.ranges.values():
            size *= r.count
        return size


@dataclass(frozen=True)
class SweepPoint:
    """One evaluated grid point."""

    gains: Gains
    objective_value: float
    stable: bool
    metrics: Metrics | None


@dataclass(frozen=True)
class SweepResult:
    points: list[SweepPoint]
    best: SweepPoint
    objective: str
    scope: str


def objective_value(m: Metrics, objective: str, scope: str) -> float:
    stats = m.segments["final_revolution"] if scope == "final_revolution" else m
    if objective == "rms_contour":
        return stats.rms_contour_error
    if objective == "max_contour":
        return stats.max_abs_contour_error
    return stats.rms_axial_error


def grid_points(base_gains: Gains, spec: SweepSpec) -> list[Gains]:
    """The full gain grid in canonical enumeration order."""
    swept = [name for name in GAIN_NAMES if name in spec.ranges]
    value_lists = [spec.ranges[name].values() for name in swept]
    points = []
    for combo in itertools.product(*value_lists):
        points.append(replace(base_gains, **{n: float(v) for n, v in zip(swept, combo)}))
    return points


def sweep(base: SimConfig, spec: SweepSpec, points: list[Gains] | None = None) -> SweepResult:
    """Evaluate every grid point and report the argmin under the objective.

    A point whose simulation diverges is recorded with an infinite
    objective and stable=False rather than failing the sweep. The argmin
    is selected by (objective value, gain tuple), so it does not depend on
    the order points were evaluated in.
    """
    if spec.scope == "final_revolution" and not base.path.has_circle:
        raise ValueError("final_revolution scope needs a path with a circle segment")
    if spec.grid_size > spec.max_points:
        raise ValueError(
            f"grid has {spec.grid_size} points, over the cap of {spec.max_points}")
    if points is None:
        points = grid_points(base.gains, spec)

    evaluated: list[SweepPoint] = []
    for gains in points:
        config = replace(base, gains=gains)
        try:
            m = metrics(run(config))
        except SimulationAbort:
            evaluated.append(SweepPoint(gains, math.inf, False, None))
            continue
        evaluated.append(SweepPoint(gains, objective_value(m, spec.objective, spec.scope),
                                    True, m))

    best = min(evaluated, key=lambda p: (p.objective_value, p.gains.as_tuple()))
    return SweepResult(points=evaluated, best=best, objective=spec.objective, scope=spec.scope)


def write_sweep_csv(result: SweepResult, path) -> None:
    """One row per grid point: gains, stability flag, objective, key metrics."""
    header = list(GAIN_NAMES) + ["stable", "objective",
                                 "rms_contour_nm", "max_abs_contour_nm", "rms_axial_nm"]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for p in result.points:
            row = [f"{g:.9g}" for g in p.gains.as_tuple()]
            row.append("1" if p.stable else "0")
            row.append(f"{p.objective_value:.9g}")
            if p.metrics is not None:
                row.extend(f"{v:.9g}" for v in (p.metrics.rms_contour_error,
                                                p.metrics.max_abs_contour_error,
                                                p.metrics.rms_axial_error))
            else:
                row.extend(("inf", "inf", "inf"))
            fh.write(",".join(row) + "\n")
