"""Deterministic biaxial nano-positioning stage simulator.

Simulates a two-axis stage tracking line-and-circle reference paths under
per-axis PI control with an optional cross-coupling stage that feeds the
contour error (the signed distance to the command path) back into both
axes. Includes exact contour-error geometry, exact ZOH plant models, a
gain grid sweep, and a CLI producing CSV traces, metrics, and SVG plots.
"""

__version__ = "0.1.0"

from ._kernels import DISABLE_ENV, NUMBA_ENABLED, backend_name
from .control import ControlSignal, Gains, PIState, coupled_control_step, pi_step
from .engine import (ComparisonReport, Metrics, SegmentStats, SimConfig, SimulationAbort,
                     Trace, compare, metrics, run, write_trace_csv)
from .geometry import (AxialErrors, CircleSpec, ContourErrorVec, PathTangent, Point2,
                       circle_contour_error_exact, circle_contour_error_linearized,
                       contour_error_components, line_foot_of_perpendicular,
                       projection_matrix, signed_line_contour_error)
from .plant import DiscretePlant, PlantParams, PlantState, discretize, step
from .trajectory import (PathSample, PathSpec, default_center,
                         line_then_circle_benchmark, sample, sample_grid,
                         tangent_then_circle_benchmark)
from .tuner import (GainRange, SweepPoint, SweepResult, SweepSpec, grid_points,
                    sweep, write_sweep_csv)

__all__ = [
    "AxialErrors", "CircleSpec", "ComparisonReport", "ControlSignal", "ContourErrorVec",
    "DISABLE_ENV", "DiscretePlant", "GainRange", "Gains", "Metrics", "NUMBA_ENABLED",
    "PIState", "PathSample", "PathSpec", "PathTangent", "PlantParams", "PlantState",
    "Point2", "SegmentStats", "SimConfig", "SimulationAbort", "SweepPoint", "SweepResult",
    "SweepSpec", "Trace", "backend_name", "circle_contour_error_exact",
    "circle_contour_error_linearized", "compare", "contour_error_components",
    "coupled_control_step", "default_center", "discretize", "grid_points",
    "line_foot_of_perpendicular", "line_then_circle_benchmark", "metrics", "pi_step",
    "projection_matrix", "run", "sample", "sample_grid", "signed_line_contour_error",
    "step", "sweep", "tangent_then_circle_benchmark", "write_sweep_csv",
    "write_trace_csv",
]
