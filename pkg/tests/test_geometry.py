import math

import numpy as np
import pytest

from nanocontour import (AxialErrors, CircleSpec, PathTangent, Point2,
                         circle_contour_error_exact, circle_contour_error_linearized,
                         contour_error_components, line_foot_of_perpendicular,
                         projection_matrix, signed_line_contour_error)

from oracles import dense_circle_signed_distance, vector_projection_foot


def circle_point_at_tangent(circle: CircleSpec, theta: float) -> Point2:
    """Command point on a CCW circle where the tangent angle is theta."""
    return Point2(circle.center.x + circle.radius * math.sin(theta),
                  circle.center.y - circle.radius * math.cos(theta))


class TestCircleExact:
    def test_point_on_circle_is_zero(self):
        for r in (1.0, 400.0, 1e6):
            circle = CircleSpec(Point2(10.0, -3.0), r)
            actual = Point2(10.0 + r, -3.0)
            assert circle_contour_error_exact(actual, circle) == 0.0

    def test_center_is_minus_radius(self):
        circle = CircleSpec(Point2(7.0, 9.0), 400.0)
        assert circle_contour_error_exact(Point2(7.0, 9.0), circle) == -400.0

    def test_sign_convention(self):
        circle = CircleSpec(Point2(0.0, 0.0), 100.0)
        assert circle_contour_error_exact(Point2(150.0, 0.0), circle) > 0
        assert circle_contour_error_exact(Point2(50.0, 0.0), circle) < 0

    def test_against_dense_sampling_oracle(self):
        # small version; the full 1e4-instance run lives in the acceptance suite
        rng = np.random.default_rng(7)
        for _ in range(500):
            cx, cy = rng.uniform(-1000, 1000, 2)
            r = rng.uniform(50, 1000)
            ang = rng.uniform(0, 2 * math.pi)
            dist = rng.uniform(0, 3 * r)
            px, py = cx + dist * math.cos(ang), cy + dist * math.sin(ang)
            exact = circle_contour_error_exact(Point2(px, py), CircleSpec(Point2(cx, cy), r))
            oracle = dense_circle_signed_distance(px, py, cx, cy, r)
            assert abs(exact - oracle) <= 1e-6

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Point2(math.nan, 0.0)
        with pytest.raises(ValueError):
            CircleSpec(Point2(0.0, 0.0), -1.0)


class TestCircleLinearized:
    def test_zero_error_maps_to_zero(self):
        for theta in np.linspace(0, 2 * math.pi, 17):
            assert circle_contour_error_linearized(
                AxialErrors(0.0, 0.0), PathTangent(float(theta)), 400.0) == 0.0

    def test_matches_direction_cosine_form(self):
        # e = (0, 10 nm) at theta = 0: error straight along the outward normal
        eps = circle_contour_error_linearized(AxialErrors(0.0, 10.0), PathTangent(0.0), 400.0)
        assert eps == pytest.approx(10.0, abs=1e-12)

    def test_first_order_agreement_with_exact(self):
        # reconstruct the actual point from the errors and compare to the
        # exact signed distance; the gap must stay within |e|^2 / R
        radius = 400.0
        circle = CircleSpec(Point2(0.0, 0.0), radius)
        e = AxialErrors(5.0, 5.0)
        for theta in np.linspace(0, 2 * math.pi, 64, endpoint=False):
            tangent = PathTangent(float(theta))
            cmd = circle_point_at_tangent(circle, tangent.theta)
            actual = Point2(cmd.x - e.e_x, cmd.y - e.e_y)
            exact = circle_contour_error_exact(actual, circle)
            lin = circle_contour_error_linearized(e, tangent, radius)
            assert abs(lin - exact) <= (e.e_x ** 2 + e.e_y ** 2) / radius

    def test_second_order_flag_captures_curvature(self):
        # pure tangential displacement: first order predicts zero, the
        # quadratic correction recovers the chord-vs-arc sag k^2 / (2R)
        radius = 400.0
        circle = CircleSpec(Point2(0.0, 0.0), radius)
        tangent = PathTangent(0.3)
        k = 4.0
        e = AxialErrors(-k * tangent.m_x, -k * tangent.m_y)
        cmd = circle_point_at_tangent(circle, 0.3)
        actual = Point2(cmd.x - e.e_x, cmd.y - e.e_y)
        exact = circle_contour_error_exact(actual, circle)
        first = circle_contour_error_linearized(e, tangent, radius)
        second = circle_contour_error_linearized(e, tangent, radius, second_order=True)
        assert first == pytest.approx(0.0, abs=1e-12)
        assert abs(second - exact) < abs(first - exact)
        assert second == pytest.approx(k * k / (2 * radius), rel=1e-3)

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError):
            circle_contour_error_linearized(AxialErrors(1.0, 1.0), PathTangent(0.0), 0.0)


class TestFootOfPerpendicular:
    def test_point_on_line_projects_to_itself(self):
        p = Point2(3.0, 4.0)
        m = line_foot_of_perpendicular(p, p, slope=2.5)
        assert (m.x, m.y) == pytest.approx((3.0, 4.0), abs=1e-12)

    def test_horizontal_line_drops_y(self):
        m = line_foot_of_perpendicular(Point2(0.0, 0.0), Point2(3.0, 4.0), slope=0.0)
        assert (m.x, m.y) == (3.0, 0.0)

    def test_against_vector_projection_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            cx, cy, ax, ay = rng.uniform(-1000, 1000, 4)
            slope = rng.uniform(-20, 20)
            m = line_foot_of_perpendicular(Point2(cx, cy), Point2(ax, ay), slope)
            ox, oy = vector_projection_foot(cx, cy, ax, ay, slope)
            assert abs(m.x - ox) <= 1e-9
            assert abs(m.y - oy) <= 1e-9

    def test_perpendicularity_and_line_membership(self):
        cmd, act, slope = Point2(1.0, 2.0), Point2(-3.0, 7.0), 1.7
        m = line_foot_of_perpendicular(cmd, act, slope)
        # (M - A) . (1, m) == 0 and M on the line through cmd
        assert (m.x - act.x) + slope * (m.y - act.y) == pytest.approx(0.0, abs=1e-9)
        assert m.y - cmd.y == pytest.approx(slope * (m.x - cmd.x), abs=1e-9)

    def test_rejects_vertical(self):
        with pytest.raises(ValueError):
            line_foot_of_perpendicular(Point2(0, 0), Point2(1, 1), math.inf)


class TestProjectionMatrix:
    @pytest.mark.parametrize("theta_deg,expected", [
        (0.0, [[0.0, 0.0], [0.0, 1.0]]),
        (45.0, [[0.5, -0.5], [-0.5, 0.5]]),
        (90.0, [[1.0, 0.0], [0.0, 0.0]]),
    ])
    def test_canonical_angles(self, theta_deg, expected):
        m = projection_matrix(PathTangent(math.radians(theta_deg)))
        assert np.allclose(m, expected, atol=1e-12)

    def test_properties_random_angles(self):
        rng = np.random.default_rng(3)
        for theta in rng.uniform(-10, 10, 1000):
            tangent = PathTangent(float(theta))
            m = projection_matrix(tangent)
            assert np.array_equal(m, m.T)
            assert np.max(np.abs(m @ m - m)) <= 1e-12
            assert abs(np.trace(m) - 1.0) <= 1e-12
            t_vec = np.array([tangent.m_x, tangent.m_y])
            assert np.max(np.abs(m @ t_vec)) <= 1e-12
            ev = np.sort(np.linalg.eigvalsh(m))
            assert np.allclose(ev, [0.0, 1.0], atol=1e-12)

    def test_non_expansive(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            theta = rng.uniform(-7, 7)
            e = rng.uniform(-100, 100, 2)
            m = projection_matrix(PathTangent(float(theta)))
            assert np.linalg.norm(m @ e) <= np.linalg.norm(e) * (1 + 1e-12)


class TestContourComponents:
    def test_zero_error(self):
        eps = contour_error_components(AxialErrors(0.0, 0.0), PathTangent(1.0))
        assert (eps.eps_x, eps.eps_y) == (0.0, 0.0)

    def test_tangent_direction_error_vanishes(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            theta = float(rng.uniform(-7, 7))
            k = float(rng.uniform(-50, 50))
            tangent = PathTangent(theta)
            e = AxialErrors(k * tangent.m_x, k * tangent.m_y)
            eps = contour_error_components(e, tangent)
            assert eps.magnitude() <= 1e-9 * max(abs(k), 1.0)

    def test_orthogonal_to_tangent(self):
        rng = np.random.default_rng(17)
        for _ in range(500):
            theta = float(rng.uniform(-7, 7))
            e = AxialErrors(*rng.uniform(-100, 100, 2))
            tangent = PathTangent(theta)
            eps = contour_error_components(e, tangent)
            dot = eps.eps_x * tangent.m_x + eps.eps_y * tangent.m_y
            assert abs(dot) <= 1e-9 * max(eps.magnitude(), 1e-30)

    def test_matches_foot_of_perpendicular(self):
        rng = np.random.default_rng(19)
        count = 0
        while count < 1000:
            theta = float(rng.uniform(-1.5, 1.5))
            if abs(abs(theta) - math.pi / 2) < 1e-3:
                continue
            count += 1
            cmd = Point2(*rng.uniform(-1000, 1000, 2))
            e = AxialErrors(*rng.uniform(-100, 100, 2))
            act = Point2(cmd.x - e.e_x, cmd.y - e.e_y)
            eps = contour_error_components(e, PathTangent(theta))
            foot = line_foot_of_perpendicular(cmd, act, math.tan(theta))
            assert abs(eps.eps_x - (foot.x - act.x)) <= 1e-9
            assert abs(eps.eps_y - (foot.y - act.y)) <= 1e-9

    def test_signed_line_error_magnitude(self):
        e = AxialErrors(10.0, -4.0)
        tangent = PathTangent(0.7)
        eps = contour_error_components(e, tangent)
        assert abs(signed_line_contour_error(e, tangent)) == pytest.approx(
            eps.magnitude(), rel=1e-12)
