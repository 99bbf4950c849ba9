import math

import numpy as np
import pytest

from nanocontour import (CircleSpec, PathSpec, Point2, default_center,
                         line_then_circle_benchmark, sample, sample_grid,
                         tangent_then_circle_benchmark)


def fd_direction(spec, t, h=1e-6):
    """Direction angle of the reference velocity by central difference."""
    a = sample(spec, t - h).reference
    b = sample(spec, t + h).reference
    return math.atan2(b.y - a.y, b.x - a.x)


def angle_diff_deg(a, b):
    d = (a - b + math.pi) % (2 * math.pi) - math.pi
    return abs(math.degrees(d))


def circle_only_spec(radius=400.0, frequency=1.0, revolutions=2):
    center = default_center("circle_only", radius, frequency, 0.0, math.radians(45.0))
    return PathSpec("circle_only", CircleSpec(center, radius), frequency, 0.0,
                    revolutions, math.radians(45.0))


class TestSpecs:
    def test_benchmark_fields(self):
        a = line_then_circle_benchmark()
        assert a.circle.radius == 400.0
        assert a.frequency == 1.0
        assert a.duration == 6.0
        assert a.revolutions == 4
        assert math.degrees(a.approach_angle) == pytest.approx(45.0)
        b = tangent_then_circle_benchmark()
        assert b.kind == "tangent_then_circle"
        assert b.duration == 6.0

    def test_paths_start_at_origin(self):
        for spec in (line_then_circle_benchmark(), tangent_then_circle_benchmark(),
                     circle_only_spec()):
            p0 = sample(spec, 0.0).reference
            assert abs(p0.x) <= 1e-9
            assert abs(p0.y) <= 1e-9

    def test_validation(self):
        circle = CircleSpec(Point2(0, 0), 400.0)
        with pytest.raises(ValueError):
            PathSpec("bogus", circle, 1.0, 2.0, 4, 0.0)
        with pytest.raises(ValueError):
            PathSpec("line_then_circle", circle, 0.0, 2.0, 4, 0.0)
        with pytest.raises(ValueError):
            PathSpec("line_then_circle", circle, 1.0, -1.0, 4, 0.0)
        with pytest.raises(ValueError):
            PathSpec("line_then_circle", circle, 1.0, 2.0, 0, 0.0)
        with pytest.raises(ValueError):
            PathSpec("circle_only", circle, 1.0, 2.0, 4, 0.0)
        with pytest.raises(ValueError):
            PathSpec("line_only", circle, 1.0, 0.0, 1, 0.0)


class TestSample:
    def test_circle_periodicity(self):
        spec = circle_only_spec()
        p0 = sample(spec, 0.0).reference
        p1 = sample(spec, 1.0 / spec.frequency).reference
        assert p0.x == pytest.approx(p1.x, abs=1e-9)
        assert p0.y == pytest.approx(p1.y, abs=1e-9)

    def test_junction_positional_continuity(self):
        # the approach is affine, so its one-sided limit at the junction is
        # an exact extrapolation from any interior sample
        for spec in (line_then_circle_benchmark(), tangent_then_circle_benchmark()):
            t_half = spec.approach_duration / 2
            mid = sample(spec, t_half).reference
            line_end_x = mid.x + spec.speed * t_half * math.cos(spec.approach_angle)
            line_end_y = mid.y + spec.speed * t_half * math.sin(spec.approach_angle)
            circle_start = sample(spec, spec.approach_duration).reference
            assert abs(line_end_x - circle_start.x) <= 1e-9
            assert abs(line_end_y - circle_start.y) <= 1e-9

    def test_tangent_entry_velocity_direction_continuous(self):
        spec = tangent_then_circle_benchmark()
        d = fd_direction(spec, spec.approach_duration)
        approach = sample(spec, spec.approach_duration / 2).tangent.theta
        assert angle_diff_deg(d, approach) < 0.01

    def test_line_entry_direction_jumps(self):
        # scenario contrast: radial entry turns the travel direction sharply
        spec = line_then_circle_benchmark()
        h = 1e-6
        before = fd_direction(spec, spec.approach_duration - 2 * h, h)
        after = fd_direction(spec, spec.approach_duration + 2 * h, h)
        assert angle_diff_deg(before, after) > 10.0

    def test_analytic_tangent_matches_finite_difference(self):
        for spec in (line_then_circle_benchmark(), tangent_then_circle_benchmark(),
                     circle_only_spec()):
            for t in np.linspace(0.05, spec.duration - 0.05, 37):
                t = float(t)
                if abs(t - spec.approach_duration) < 0.01:
                    continue
                s = sample(spec, t)
                assert angle_diff_deg(fd_direction(spec, t), s.tangent.theta) < 0.01

    def test_speed_on_circle_constant(self):
        spec = circle_only_spec()
        h = 1e-6
        expected = 2 * math.pi * spec.frequency * spec.circle.radius
        for t in np.linspace(0.1, spec.duration - 0.1, 23):
            a = sample(spec, float(t) - h).reference
            b = sample(spec, float(t) + h).reference
            speed = math.hypot(b.x - a.x, b.y - a.y) / (2 * h)
            assert speed == pytest.approx(expected, rel=1e-9)

    def test_segment_labels(self):
        spec = line_then_circle_benchmark()
        assert sample(spec, 1.0).segment == "approach"
        assert sample(spec, 2.0).segment == "circle"
        assert sample(spec, 5.9).segment == "circle"

    def test_domain_rejection(self):
        spec = line_then_circle_benchmark()
        with pytest.raises(ValueError):
            sample(spec, -0.1)
        with pytest.raises(ValueError):
            sample(spec, spec.duration + 0.1)

    def test_pure_function(self):
        spec = tangent_then_circle_benchmark()
        a = sample(spec, 3.21)
        b = sample(spec, 3.21)
        assert a == b


class TestSampleGrid:
    def test_matches_scalar_sample(self):
        for spec in (line_then_circle_benchmark(), tangent_then_circle_benchmark()):
            t = np.linspace(0.0, spec.duration, 601)
            x, y, theta, on_circle = sample_grid(spec, t)
            for i in (0, 1, 150, 300, 599, 600):
                s = sample(spec, float(t[i]))
                assert x[i] == pytest.approx(s.reference.x, abs=1e-9)
                assert y[i] == pytest.approx(s.reference.y, abs=1e-9)
                assert on_circle[i] == (s.segment == "circle")
                assert theta[i] == pytest.approx(s.tangent.theta, abs=1e-12)

    def test_line_only_never_on_circle(self):
        center = default_center("line_only", 400.0, 1.0, 2.0, 0.5)
        spec = PathSpec("line_only", CircleSpec(center, 400.0), 1.0, 2.0, 1, 0.5)
        t = np.linspace(0.0, spec.duration, 101)
        _, _, _, on_circle = sample_grid(spec, t)
        assert not on_circle.any()
        assert spec.duration == 2.0
