"""Closed-loop simulation engine, trace logging, and error metrics.

Wires trajectory -> axial error -> coupled controller -> plants at a fixed
step. The loop ordering is fixed: sample the path at t_k, form errors
against the current plant positions, compute the control outputs, log the
step-k record (reference, actual, errors, contour error, outputs), then
advance the plants toward step k+1. Identical configurations produce
bit-identical traces.

Contour error is logged with the exact circle formula on circle segments
so that reported metrics never rely on small-error linearization; on line
segments it is the signed perpendicular distance. The controller itself
always uses the projection form, on both segments, with theta switching
from the approach angle to the circle tangent at the junction sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .control import Gains
from .plant import PlantParams, discretize
from .trajectory import PathSpec, sample_grid

MIN_SAMPLES_PER_REV = 20

CSV_HEADER = "t,x_ref,y_ref,x_act,y_act,e_x,e_y,eps,v_rx,v_ry"


class SimulationAbort(RuntimeError):
    """Raised when the loop state becomes non-finite; carries the step index."""

    def __init__(self, step: int, message: str):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class SimConfig:
    """Everything one simulation run depends on."""

    path: PathSpec
    gains: Gains
    plant_x: PlantParams
    plant_y: PlantParams
    dt: float
    saturation: float | None = None
    coupling_enabled: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if self.dt > 1.0 / (MIN_SAMPLES_PER_REV * self.path.frequency):
            raise ValueError(
                f"dt={self.dt!r} too coarse: need at least {MIN_SAMPLES_PER_REV} "
                "samples per path period")
        n = round(self.path.duration / self.dt)
        if n < 1 or abs(n * self.dt - self.path.duration) > self.dt:
            raise ValueError(
                f"dt={self.dt!r} does not divide the path duration "
                f"{self.path.duration!r} to within one sample")
        if self.saturation is not None and not (math.isfinite(self.saturation)
                                                and self.saturation > 0.0):
            raise ValueError(f"saturation bound must be positive, got {self.saturation!r}")

    @property
    def n_steps(self) -> int:
        return round(self.path.duration / self.dt)


@dataclass(frozen=True)
class Trace:
    """Time-indexed log of one run; all arrays share one length."""

    t: np.ndarray
    x_ref: np.ndarray
    y_ref: np.ndarray
    x_act: np.ndarray
    y_act: np.ndarray
    e_x: np.ndarray
    e_y: np.ndarray
    eps: np.ndarray
    v_rx: np.ndarray
    v_ry: np.ndarray
    on_circle: np.ndarray
    path: PathSpec
    dt: float

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class SegmentStats:
    """Error statistics over one slice of a trace."""

    max_abs_contour_error: float
    rms_contour_error: float
    max_abs_e_x: float
    max_abs_e_y: float
    rms_axial_error: float
    n_samples: int


@dataclass(frozen=True)
class Metrics:
    """Whole-trace statistics plus per-segment breakdown.

    Segments present depend on the path: "approach" and "circle" where the
    path has them, and "final_revolution" (the last commanded circle only,
    excluding the approach transient) whenever there is a circle segment.
    """

    max_abs_contour_error: float
    rms_contour_error: float
    max_abs_e_x: float
    max_abs_e_y: float
    rms_axial_error: float
    segments: dict[str, SegmentStats] = field(default_factory=dict)


@dataclass(frozen=True)
class ComparisonReport:
    """Paired metrics of two runs over the same path and step."""

    metrics_a: Metrics
    metrics_b: Metrics
    relative_change: dict[str, float]


def run(config: SimConfig) -> Trace:
    """Simulate one configuration and return the full trace.

    Plants start at the t=0 reference with zero velocity and zeroed
    integrators, which isolates tracking behavior from startup transients.
    Raises SimulationAbort (with the offending step index) if any state or
    control value becomes non-finite.
    """
    n = config.n_steps
    t = np.arange(n + 1, dtype=np.float64) * config.dt
    x_ref, y_ref, theta, on_circle = sample_grid(config.path, t)

    dpx = discretize(config.plant_x, config.dt)
    dpy = discretize(config.plant_y, config.dt)

    out = [np.empty(n + 1, dtype=np.float64) for _ in range(7)]
    x_act, y_act, e_x, e_y, eps, v_rx, v_ry = out

    g = config.gains
    sat = config.saturation if config.saturation is not None else math.inf
    abort = _kernels.closed_loop(
        x_ref, y_ref, theta, on_circle,
        config.path.circle.center.x, config.path.circle.center.y,
        config.path.circle.radius,
        dpx.a11, dpx.a12, dpx.a21, dpx.a22, dpx.b1, dpx.b2,
        dpy.a11, dpy.a12, dpy.a21, dpy.a22, dpy.b1, dpy.b2,
        g.k_px, g.k_ix, g.k_py, g.k_iy, g.k_dx, g.k_dy,
        config.dt, sat, config.coupling_enabled,
        float(x_ref[0]), float(y_ref[0]),
        x_act, y_act, e_x, e_y, eps, v_rx, v_ry,
    )
    if abort >= 0:
        raise SimulationAbort(
            int(abort),
            f"simulation state became non-finite at step {int(abort)} "
            f"(t={abort * config.dt:.6g} s); gains likely unstable for this plant")
    return Trace(t, x_ref, y_ref, x_act, y_act, e_x, e_y, eps, v_rx, v_ry,
                 on_circle, config.path, config.dt)


def _segment_stats(eps: np.ndarray, e_x: np.ndarray, e_y: np.ndarray) -> SegmentStats:
    # squares may overflow to inf on a diverging (yet still finite) trace;
    # inf is the honest statistic there
    with np.errstate(over="ignore"):
        axial_sq = e_x * e_x + e_y * e_y
        return SegmentStats(
            max_abs_contour_error=float(np.max(np.abs(eps))),
            rms_contour_error=float(np.sqrt(np.mean(eps * eps))),
            max_abs_e_x=float(np.max(np.abs(e_x))),
            max_abs_e_y=float(np.max(np.abs(e_y))),
            rms_axial_error=float(np.sqrt(np.mean(axial_sq))),
            n_samples=int(len(eps)),
        )


def final_revolution_mask(trace: Trace) -> np.ndarray:
    """Samples belonging to the last commanded circle revolution."""
    if not trace.path.has_circle:
        raise ValueError("path has no circle segment")
    t_start = trace.path.duration - 1.0 / trace.path.frequency
    return trace.on_circle & (trace.t >= t_start - 1e-12)


def metrics(trace: Trace) -> Metrics:
    """Max and RMS error statistics, whole trace and per segment.

    RMS is over samples; with a uniform step that equals the time-weighted
    value. Rejects empty traces.
    """
    if len(trace) == 0:
        raise ValueError("empty trace")
    full = _segment_stats(trace.eps, trace.e_x, trace.e_y)
    segments: dict[str, SegmentStats] = {}
    approach = ~trace.on_circle
    if approach.any():
        segments["approach"] = _segment_stats(
            trace.eps[approach], trace.e_x[approach], trace.e_y[approach])
    if trace.on_circle.any():
        circ = trace.on_circle
        segments["circle"] = _segment_stats(
            trace.eps[circ], trace.e_x[circ], trace.e_y[circ])
        final = final_revolution_mask(trace)
        segments["final_revolution"] = _segment_stats(
            trace.eps[final], trace.e_x[final], trace.e_y[final])
    return Metrics(
        max_abs_contour_error=full.max_abs_contour_error,
        rms_contour_error=full.rms_contour_error,
        max_abs_e_x=full.max_abs_e_x,
        max_abs_e_y=full.max_abs_e_y,
        rms_axial_error=full.rms_axial_error,
        segments=segments,
    )


_COMPARED_FIELDS = ("max_abs_contour_error", "rms_contour_error",
                    "max_abs_e_x", "max_abs_e_y", "rms_axial_error")


def _relative_change(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0 if b == 0.0 else math.inf
    return (b - a) / a


def compare(config_a: SimConfig, config_b: SimConfig) -> ComparisonReport:
    """Run two configurations over the same path and pair their metrics.

    relative_change maps each metric name to (b - a) / a, so negative
    values mean configuration B improved on A. Rejects configs whose path
    or step differ, since their metrics would not be comparable.
    """
    if config_a.path != config_b.path:
        raise ValueError("compared configurations must share the same path")
    if config_a.dt != config_b.dt:
        raise ValueError("compared configurations must share the same dt")
    ma = metrics(run(config_a))
    mb = metrics(run(config_b))
    rel = {name: _relative_change(getattr(ma, name), getattr(mb, name))
           for name in _COMPARED_FIELDS}
    return ComparisonReport(metrics_a=ma, metrics_b=mb, relative_change=rel)


def write_trace_csv(trace: Trace, path) -> None:
    """Trace export: one row per sample, floats at 9 significant digits."""
    cols = (trace.t, trace.x_ref, trace.y_ref, trace.x_act, trace.y_act,
            trace.e_x, trace.e_y, trace.eps, trace.v_rx, trace.v_ry)
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in zip(*cols):
            fh.write(",".join(f"{v:.9g}" for v in row) + "\n")


def metrics_to_dict(m: Metrics) -> dict:
    """JSON-ready form of Metrics; keys documented in the README."""
    def stats_dict(max_c, rms_c, max_x, max_y, rms_a, n=None):
        d = {
            "max_abs_contour_error_nm": max_c,
            "rms_contour_error_nm": rms_c,
            "max_abs_e_x_nm": max_x,
            "max_abs_e_y_nm": max_y,
            "rms_axial_error_nm": rms_a,
        }
        if n is not None:
            d["n_samples"] = n
        return d

    return {
        "full": stats_dict(m.max_abs_contour_error, m.rms_contour_error,
                           m.max_abs_e_x, m.max_abs_e_y, m.rms_axial_error),
        "segments": {
            name: stats_dict(s.max_abs_contour_error, s.rms_contour_error,
                             s.max_abs_e_x, s.max_abs_e_y, s.rms_axial_error,
                             s.n_samples)
            for name, s in m.segments.items()
        },
    }
