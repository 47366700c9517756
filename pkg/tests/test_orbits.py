"""Billiard orbit construction: closed-form 3-periodics, the general-N
solver, Joachimsthal constants, and the confocal caustic."""

import math

import pytest

from inversive_billiards import (
    GeometryError,
    OrbitError,
    Polygon,
    confocal_caustic_n3,
    ellipse_residual,
    family_caustic,
    joachimsthal,
    make_ellipse,
    n3_closed_form_JL,
    perimeter,
    reflection_residual,
    signed_area,
    solve_nperiodic,
    stachel_j,
    three_periodic,
)

TAU = 2.0 * math.pi


class TestThreePeriodic:
    def test_isosceles_at_vertex(self):
        orbit = three_periodic(make_ellipse(2.0, 1.0), 0.0)
        p1, p2, p3 = orbit.vertices
        assert p1 == pytest.approx((2.0, 0.0))
        # the two other vertices mirror across the x axis
        assert p2[0] == pytest.approx(p3[0], rel=1e-12)
        assert p2[1] == pytest.approx(-p3[1], rel=1e-12)

    @pytest.mark.parametrize("t1", [k * TAU / 16 + 0.05 for k in range(16)])
    def test_joachimsthal_spread(self, t1):
        orbit = three_periodic(make_ellipse(1.5, 1.0), t1)
        assert orbit.j_spread < 1e-10

    def test_perimeter_table_value(self):
        ellipse = make_ellipse(1.5, 1.0)
        for k in range(32):
            orbit = three_periodic(ellipse, k * TAU / 32 + 0.01)
            assert perimeter(Polygon(orbit.vertices)) == pytest.approx(6.738, abs=1e-3)

    def test_positive_orientation(self):
        for t1 in (0.0, 1.0, 2.5, 5.0):
            orbit = three_periodic(make_ellipse(2.0, 1.0), t1)
            assert signed_area(Polygon(orbit.vertices)) > 0.0

    def test_circle_rejected(self):
        with pytest.raises(GeometryError):
            three_periodic(make_ellipse(1.0, 1.0), 0.0)


class TestCaustic:
    def test_two_one_values(self):
        caustic = confocal_caustic_n3(make_ellipse(2.0, 1.0))
        assert caustic.a2 == pytest.approx(2.0 * (math.sqrt(13.0) - 1.0) / 3.0, rel=1e-14)
        assert caustic.b2 == pytest.approx((4.0 - math.sqrt(13.0)) / 3.0, rel=1e-14)
        assert caustic.a2 == pytest.approx(1.7371, abs=1e-4)
        assert caustic.b2 == pytest.approx(0.13148, abs=1e-5)

    def test_confocality(self):
        for a in (1.2, 1.5, 2.0, 3.0):
            e = make_ellipse(a, 1.0)
            caustic = confocal_caustic_n3(e)
            assert caustic.a2**2 - caustic.b2**2 == pytest.approx(e.c**2, rel=1e-12)

    def test_side_tangency(self):
        from inversive_billiards.caustics import line_through, tangency_residual

        e = make_ellipse(2.0, 1.0)
        caustic = confocal_caustic_n3(e)
        for k in range(16):
            orbit = three_periodic(e, k * TAU / 16 + 0.02)
            for i in range(3):
                coeffs = line_through(orbit.vertices[i], orbit.vertices[(i + 1) % 3])
                assert abs(tangency_residual(coeffs, caustic)) < 1e-9

    def test_circle_rejected(self):
        with pytest.raises(GeometryError):
            confocal_caustic_n3(make_ellipse(1.0, 1.0))


class TestJoachimsthal:
    def test_circle_regular_polygons(self):
        e = make_ellipse(1.0, 1.0)
        for n in (3, 4, 5, 6):
            orbit = solve_nperiodic(e, n, 0.2)
            assert joachimsthal(e, orbit) == pytest.approx(math.sin(math.pi / n), rel=1e-12)
        assert joachimsthal(e, solve_nperiodic(e, 3, 0.0)) == pytest.approx(0.866, abs=5e-4)

    def test_three_one_table(self):
        e = make_ellipse(3.0, 1.0)
        orbit = three_periodic(e, 0.4)
        assert joachimsthal(e, orbit) == pytest.approx(0.333, abs=5e-4)

    def test_matches_closed_form(self):
        e = make_ellipse(2.0, 1.0)
        j_ref, _ = n3_closed_form_JL(e)
        orbit = three_periodic(e, 1.234)
        assert joachimsthal(e, orbit) == pytest.approx(j_ref, rel=1e-10)
        assert j_ref == pytest.approx(0.496, abs=5e-4)

    def test_rejects_non_orbit(self):
        from inversive_billiards.orbits import Orbit

        e = make_ellipse(2.0, 1.0)
        good = three_periodic(e, 0.3)
        bad = Orbit(
            ellipse=e,
            n=3,
            params=good.params,
            vertices=good.vertices,
            j_values=(0.4, 0.5, 0.6),
        )
        with pytest.raises(OrbitError):
            joachimsthal(e, bad)


class TestClosedFormJL:
    @pytest.mark.parametrize(
        "a,j_ref,l_ref",
        [(1.25, 0.752, 5.916), (2.0, 0.496, 8.531)],
    )
    def test_table_values(self, a, j_ref, l_ref):
        j, length = n3_closed_form_JL(make_ellipse(a, 1.0))
        assert j == pytest.approx(j_ref, abs=5e-4)
        assert length == pytest.approx(l_ref, abs=5e-4)

    def test_consistency(self):
        e = make_ellipse(1.7, 1.0)
        j, length = n3_closed_form_JL(e)
        assert length == pytest.approx(2.0 * (e.delta + e.a**2 + e.b**2) * j, rel=1e-15)

    def test_circle_rejected(self):
        with pytest.raises(GeometryError):
            n3_closed_form_JL(make_ellipse(1.0, 1.0))


class TestStachel:
    def test_two_one(self):
        e = make_ellipse(2.0, 1.0)
        caustic = confocal_caustic_n3(e)
        assert stachel_j(e, caustic.a2) == pytest.approx(0.4956, abs=1e-4)

    def test_circle_geometry(self):
        e = make_ellipse(1.0, 1.0)
        for n in (3, 4, 5):
            assert stachel_j(e, math.cos(math.pi / n)) == pytest.approx(
                math.sin(math.pi / n), rel=1e-14
            )

    def test_limit_and_domain(self):
        e = make_ellipse(2.0, 1.0)
        assert stachel_j(e, 2.0 - 1e-12) == pytest.approx(0.0, abs=1e-5)
        with pytest.raises(GeometryError):
            stachel_j(e, 2.0)
        with pytest.raises(GeometryError):
            stachel_j(e, 2.5)


class TestSolveNPeriodic:
    def test_regular_pentagon(self):
        e = make_ellipse(1.0, 1.0)
        orbit = solve_nperiodic(e, 5, 0.0)
        assert perimeter(Polygon(orbit.vertices)) == pytest.approx(10.0 * math.sin(math.pi / 5), rel=1e-12)
        assert perimeter(Polygon(orbit.vertices)) == pytest.approx(5.878, abs=1e-3)

    def test_four_periodic_rhombus(self):
        e = make_ellipse(2.0, 1.0)
        orbit = solve_nperiodic(e, 4, 0.7)
        assert perimeter(Polygon(orbit.vertices)) == pytest.approx(4.0 * math.sqrt(5.0), rel=1e-10)
        assert perimeter(Polygon(orbit.vertices)) == pytest.approx(8.944, abs=1e-3)

    def test_six_periodic_table(self):
        orbit = solve_nperiodic(make_ellipse(1.5, 1.0), 6, 0.3)
        assert perimeter(Polygon(orbit.vertices)) == pytest.approx(7.600, abs=1e-3)

    def test_agrees_with_closed_form(self):
        e = make_ellipse(1.5, 1.0)
        for t1 in (0.1, 1.3, 2.9, 4.7):
            solved = solve_nperiodic(e, 3, t1)
            closed = three_periodic(e, t1)
            for p, q in zip(solved.vertices, closed.vertices):
                assert math.dist(p, q) < 1e-9

    def test_params_increasing_winding_one(self):
        orbit = solve_nperiodic(make_ellipse(2.0, 1.0), 7, 0.5)
        rel = [(t - orbit.params[0]) % TAU for t in orbit.params]
        rel[0] = 0.0
        assert all(rel[i] < rel[i + 1] for i in range(6))

    def test_vertices_on_ellipse(self):
        e = make_ellipse(3.0, 1.0)
        orbit = solve_nperiodic(e, 9, 1.0)
        for p in orbit.vertices:
            assert abs(ellipse_residual(e, p)) < 1e-10

    def test_caustic_reuse(self):
        e = make_ellipse(1.5, 1.0)
        caustic = family_caustic(e, 5)
        a = solve_nperiodic(e, 5, 0.8, caustic=caustic)
        b = solve_nperiodic(e, 5, 0.8)
        for p, q in zip(a.vertices, b.vertices):
            assert math.dist(p, q) < 1e-10

    def test_n_too_small(self):
        with pytest.raises(GeometryError):
            solve_nperiodic(make_ellipse(1.5, 1.0), 2, 0.0)


class TestReflectionResidual:
    def test_regular_polygon_zero(self):
        e = make_ellipse(1.0, 1.0)
        for n in (3, 4, 5):
            step = TAU / n
            assert abs(reflection_residual(e, -step, 0.0, step)) < 1e-14

    def test_closed_form_orbit_zero(self):
        e = make_ellipse(2.0, 1.0)
        orbit = three_periodic(e, 0.9)
        t1, t2, t3 = orbit.params
        for prev, cur, nxt in ((t3, t1, t2), (t1, t2, t3), (t2, t3, t1)):
            assert abs(reflection_residual(e, prev, cur, nxt)) < 1e-10

    def test_sign_change_across_root(self):
        e = make_ellipse(2.0, 1.0)
        t1, t2, t3 = three_periodic(e, 0.9).params
        lo = reflection_residual(e, t1, t2 - 1e-3, t3)
        hi = reflection_residual(e, t1, t2 + 1e-3, t3)
        assert lo != 0.0 and hi != 0.0
        assert lo * hi < 0.0

    def test_coincident_rejected(self):
        with pytest.raises(OrbitError):
            reflection_residual(make_ellipse(2.0, 1.0), 1.0, 1.0, 2.0)


class TestFamilyInvariants:
    @pytest.mark.parametrize("a", [1.1, 1.25, 1.5, 2.0, 3.0])
    def test_n3_closed_forms_over_family(self, a):
        e = make_ellipse(a, 1.0)
        j_ref, l_ref = n3_closed_form_JL(e)
        for k in range(64):
            orbit = three_periodic(e, k * TAU / 64 + 0.007)
            assert joachimsthal(e, orbit) == pytest.approx(j_ref, rel=1e-10)
            assert perimeter(Polygon(orbit.vertices)) == pytest.approx(l_ref, rel=1e-10)

    def test_stachel_recovers_measured_j(self):
        e = make_ellipse(1.5, 1.0)
        for n in (3, 4, 5):
            caustic = family_caustic(e, n)
            orbit = solve_nperiodic(e, n, 0.4, caustic=caustic)
            assert stachel_j(e, caustic.a2) == pytest.approx(joachimsthal(e, orbit), rel=1e-9)
