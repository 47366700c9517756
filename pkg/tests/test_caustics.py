"""Envelope sampling of moving line families and tangency residuals."""

import math

import pytest

from inversive_billiards import (
    GeometryError,
    LineFamily,
    confocal_caustic_n3,
    envelope_sample,
    fit_conic,
    make_ellipse,
    side_line_family,
    tangency_residual,
)
from inversive_billiards.caustics import line_through
from inversive_billiards.orbits import CausticSpec

TAU = 2.0 * math.pi


def unit_circle_tangents(n):
    params, anchors, dirs = [], [], []
    for i in range(n):
        t = i * TAU / n
        params.append(t)
        anchors.append((math.cos(t), math.sin(t)))
        dirs.append((-math.sin(t), math.cos(t)))
    return LineFamily(tuple(params), tuple(anchors), tuple(dirs))


class TestEnvelope:
    def test_unit_circle(self):
        env = envelope_sample(unit_circle_tangents(512))
        assert all(p is not None for p in env)
        worst = max(abs(math.hypot(*p) - 1.0) for p in env)
        assert worst < 1e-6

    def _billiard_envelope_error(self, e, grid):
        caustic = confocal_caustic_n3(e)
        family = side_line_family(e, n=3, side=0, family="billiard", grid=grid)
        worst = 0.0
        for p in envelope_sample(family):
            if p is None:
                continue
            f = (p[0] / caustic.a2) ** 2 + (p[1] / caustic.b2) ** 2 - 1.0
            grad = math.hypot(2.0 * p[0] / caustic.a2**2, 2.0 * p[1] / caustic.b2**2)
            worst = max(worst, abs(f) / grad)
        return worst

    def test_billiard_sides_reproduce_caustic(self):
        assert self._billiard_envelope_error(make_ellipse(2.0, 1.0), 1024) < 1e-6

    @pytest.mark.parametrize("n", [4, 5])
    def test_nperiodic_envelope_confocal(self, n):
        from inversive_billiards import family_caustic

        e = make_ellipse(1.5, 1.0)
        caustic = family_caustic(e, n)
        family = side_line_family(e, n=n, side=0, family="billiard", grid=256)
        worst = 0.0
        for p in envelope_sample(family):
            if p is None:
                continue
            f = (p[0] / caustic.a2) ** 2 + (p[1] / caustic.b2) ** 2 - 1.0
            grad = math.hypot(2.0 * p[0] / caustic.a2**2, 2.0 * p[1] / caustic.b2**2)
            worst = max(worst, abs(f) / grad)
        assert worst < 1e-6

    def test_inversive_caustic_is_not_conic(self):
        e = make_ellipse(1.25, 1.0)
        family = side_line_family(e, n=3, side=0, family="focus-inversive", grid=256)
        pts = [p for p in envelope_sample(family) if p is not None]
        fit = fit_conic(pts)
        scale = max(max(abs(x) for x, _ in pts), max(abs(y) for _, y in pts))
        assert fit.rms / scale > 1e-3

    def test_refinement_improves(self):
        # tangent families in trig parametrization are exact by cancellation,
        # so refinement is observable only on the billiard-parameter family
        e = make_ellipse(2.0, 1.0)
        errs = [self._billiard_envelope_error(e, n) for n in (256, 512, 1024)]
        assert errs[0] > errs[1] > errs[2]

    def test_gap_marking(self):
        # parallel translating lines never intersect: every sample is a gap
        n = 64
        family = LineFamily(
            tuple(float(i) for i in range(n)),
            tuple((0.0, float(i)) for i in range(n)),
            tuple((1.0, 0.0) for _ in range(n)),
        )
        assert all(p is None for p in envelope_sample(family))

    def test_too_few_samples(self):
        with pytest.raises(GeometryError):
            envelope_sample(unit_circle_tangents(32))


class TestTangencyResidual:
    def test_vertical_tangent(self):
        circle = CausticSpec(1.0, 1.0)
        assert tangency_residual((1.0, 0.0), circle) == pytest.approx(0.0, abs=1e-15)

    def test_vertical_secant(self):
        circle = CausticSpec(1.0, 1.0)
        assert tangency_residual((0.5, 0.0), circle) == pytest.approx(-0.75, rel=1e-15)

    def test_line_through_center_rejected(self):
        with pytest.raises(GeometryError):
            line_through((1.0, 1.0), (-1.0, -1.0))

    def test_line_through_normalization(self):
        u, v = line_through((2.0, 0.0), (0.0, 3.0))
        assert 2.0 * u == pytest.approx(1.0)
        assert 3.0 * v == pytest.approx(1.0)
