"""Focus-inversive, center-inversive, and pedal polygon construction."""

import math

import pytest

from inversive_billiards import (
    GeometryError,
    InversiveConfig,
    Polygon,
    center_inversive,
    fit_circle,
    focus_inversive,
    make_ellipse,
    pedal_polygon,
    perimeter,
    signed_area,
    solve_nperiodic,
    spoke_stats,
    three_periodic,
)
from inversive_billiards.invariants import closed_form_refs

TAU = 2.0 * math.pi


class TestFocusInversive:
    def test_spoke_identity(self):
        e = make_ellipse(2.0, 1.0)
        orbit = three_periodic(e, 0.0)
        inv = focus_inversive(orbit, InversiveConfig(1, 1.0))
        fx, fy = e.foci[0]
        for p_dag, d in zip(inv.vertices, inv.spokes):
            assert math.dist(p_dag, (fx, fy)) * d == pytest.approx(1.0, rel=1e-12)

    def test_all_configs_identity(self):
        e = make_ellipse(1.5, 1.0)
        orbit = three_periodic(e, 0.77)
        for j in (1, 2):
            for rho in (0.5, 1.0, 2.0):
                cfg = InversiveConfig(j, rho)
                inv = focus_inversive(orbit, cfg)
                f = cfg.focus(e)
                for p_dag, d in zip(inv.vertices, inv.spokes):
                    assert math.dist(p_dag, f) * d == pytest.approx(rho * rho, rel=1e-12)

    def test_small_rho_collapses_to_focus(self):
        e = make_ellipse(2.0, 1.0)
        orbit = three_periodic(e, 0.4)
        inv = focus_inversive(orbit, InversiveConfig(1, 1e-6))
        f = e.foci[0]
        for p in inv.vertices:
            assert math.dist(p, f) < 1e-11

    def test_perimeter_invariant_matches_closed_form(self):
        e = make_ellipse(1.25, 1.0)
        refs = closed_form_refs(e, 1.0)
        values = []
        for k in range(64):
            orbit = three_periodic(e, (k + 0.5) * TAU / 64)
            inv = focus_inversive(orbit, InversiveConfig(1, 1.0))
            values.append(perimeter(Polygon(inv.vertices)))
        mean = sum(values) / len(values)
        assert mean == pytest.approx(refs.L_dagger, rel=1e-9)
        for v in values:
            assert v == pytest.approx(refs.L_dagger, rel=1e-9)

    def test_circle_table_rejected(self):
        e = make_ellipse(1.0, 1.0)
        orbit = solve_nperiodic(e, 3, 0.0)
        with pytest.raises(GeometryError):
            focus_inversive(orbit, InversiveConfig(1, 1.0))

    def test_bad_config(self):
        with pytest.raises(GeometryError):
            InversiveConfig(3, 1.0)
        with pytest.raises(GeometryError):
            InversiveConfig(1, 0.0)


class TestCenterInversive:
    def test_unit_circle_identity(self):
        e = make_ellipse(1.0, 1.0)
        orbit = solve_nperiodic(e, 3, 0.3)
        out = center_inversive(orbit, 1.0)
        for p, q in zip(orbit.vertices, out.vertices):
            assert math.dist(p, q) < 1e-12

    def test_radial_scaling(self):
        e = make_ellipse(2.0, 1.0)
        orbit = three_periodic(e, 0.0)
        out = center_inversive(orbit, 1.0)
        # first vertex (2, 0) maps to (1/2, 0)
        assert out.vertices[0][0] == pytest.approx(0.5, rel=1e-12)
        assert out.vertices[0][1] == pytest.approx(0.0, abs=1e-15)
        for p, q in zip(orbit.vertices, out.vertices):
            d = math.hypot(*p)
            assert math.hypot(*q) == pytest.approx(1.0 / d, rel=1e-12)

    def test_circumcircle_maps_to_circumcircle(self):
        # the image of the orbit circumcircle is the circumcircle of the image
        e = make_ellipse(1.5, 1.0)
        orbit = three_periodic(e, 0.9)
        from inversive_billiards import invert_point, CircleSpec

        fit_orig = fit_circle(orbit.vertices)
        out = center_inversive(orbit, 1.0)
        fit_inv = fit_circle(out.vertices)
        circ = CircleSpec((0.0, 0.0), 1.0)
        # sample the original circumcircle, invert, and compare with the fit
        for k in range(12):
            t = k * TAU / 12
            p = (
                fit_orig.center[0] + fit_orig.radius * math.cos(t),
                fit_orig.center[1] + fit_orig.radius * math.sin(t),
            )
            q = invert_point(p, circ)
            assert math.dist(q, fit_inv.center) == pytest.approx(fit_inv.radius, rel=1e-9)


class TestPedal:
    def test_equilateral_circumcenter_gives_medial(self):
        verts = tuple((math.cos(TAU * k / 3), math.sin(TAU * k / 3)) for k in range(3))
        pedal = pedal_polygon(Polygon(verts), (0.0, 0.0))
        mids = [
            ((verts[i][0] + verts[(i + 1) % 3][0]) / 2.0, (verts[i][1] + verts[(i + 1) % 3][1]) / 2.0)
            for i in range(3)
        ]
        for p, m in zip(pedal.vertices, mids):
            assert math.dist(p, m) < 1e-14

    def test_pivot_on_side_line(self):
        poly = Polygon(((0.0, 0.0), (2.0, 0.0), (1.0, 1.5)))
        pivot = (0.5, 0.0)  # on the first side
        pedal = pedal_polygon(poly, pivot)
        assert math.dist(pedal.vertices[0], pivot) < 1e-14

    def test_pedal_area_equality_between_foci(self):
        e = make_ellipse(2.0, 1.0)
        orbit = three_periodic(e, 0.7)
        f1, f2 = e.foci
        inv1 = focus_inversive(orbit, InversiveConfig(1, 1.0))
        inv2 = focus_inversive(orbit, InversiveConfig(2, 1.0))
        a1 = abs(signed_area(pedal_polygon(Polygon(inv1.vertices), f1)))
        a2 = abs(signed_area(pedal_polygon(Polygon(inv2.vertices), f2)))
        assert abs(a1 - a2) < 1e-10 * e.a**2


class TestSpokeStats:
    def test_closed_form_sum(self):
        e = make_ellipse(2.0, 1.0)
        ref = (e.a**2 + e.b**2 + e.delta) / (e.a * e.b**2)
        assert ref == pytest.approx(4.3028, abs=1e-4)
        for t1 in (0.0, 0.9, 2.2, 4.1):
            orbit = three_periodic(e, t1)
            _, total = spoke_stats(orbit, 1)
            assert total == pytest.approx(ref, rel=1e-12)

    def test_near_circle_limit(self):
        # at a = b the focus merges with the center and sum(1/d) -> n
        e = make_ellipse(1.0 + 1e-9, 1.0)
        orbit = three_periodic(e, 0.3)
        _, total = spoke_stats(orbit, 1)
        assert total == pytest.approx(3.0, abs=1e-4)

    def test_focal_distance_identity(self):
        e = make_ellipse(1.5, 1.0)
        for t1 in (0.1, 1.0, 3.3):
            orbit = three_periodic(e, t1)
            d1, _ = spoke_stats(orbit, 1)
            d2, _ = spoke_stats(orbit, 2)
            for u, v in zip(d1, d2):
                assert u + v == pytest.approx(2.0 * e.a, rel=1e-12)

    def test_distance_sum_equals_scaled_spoke_sum(self):
        # sum of focus-to-inverted-vertex distances is rho^2 sum(1/d)
        e = make_ellipse(2.0, 1.0)
        rho = 0.9
        f1 = e.foci[0]
        for t1 in (0.2, 1.4, 3.0, 5.1):
            orbit = three_periodic(e, t1)
            inv = focus_inversive(orbit, InversiveConfig(1, rho))
            dist_sum = sum(math.dist(p, f1) for p in inv.vertices)
            _, inv_sum = spoke_stats(orbit, 1)
            assert dist_sum == pytest.approx(rho * rho * inv_sum, rel=1e-12)
