"""Numerical envelopes of moving line families and caustic tangency tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import EllipseSpec, GeometryError, Point2
from .inversive import InversiveConfig, center_inversive, focus_inversive
from .invariants import family_orbits
from .orbits import CausticSpec

# Lines closer to parallel than this (cross product of unit directions) give
# an envelope gap instead of an intersection point.
PARALLEL_EPS = 1e-10


@dataclass(frozen=True)
class LineFamily:
    """A side line per parameter sample: (anchor point, direction)."""

    params: tuple[float, ...]
    anchors: tuple[Point2, ...]
    directions: tuple[Point2, ...]

    def __post_init__(self) -> None:
        for d in self.directions:
            if d[0] == 0.0 and d[1] == 0.0:
                raise GeometryError("zero direction in line family")

    def __len__(self) -> int:
        return len(self.params)


def side_line_family(
    ellipse: EllipseSpec,
    n: int = 3,
    side: int = 0,
    family: str = "billiard",
    rho: float = 1.0,
    grid: int = 512,
) -> LineFamily:
    """Family of one polygon side (vertex `side` to `side + 1`) over the sweep."""
    params, anchors, dirs = [], [], []
    config = InversiveConfig(1, rho)
    for orbit in family_orbits(ellipse, n, grid):
        if family == "billiard":
            verts = orbit.vertices
        elif family == "focus-inversive":
            verts = focus_inversive(orbit, config).vertices
        elif family == "center-inversive":
            verts = center_inversive(orbit, rho).vertices
        else:
            raise GeometryError(f"unknown family {family!r}")
        a = verts[side % len(verts)]
        b = verts[(side + 1) % len(verts)]
        params.append(orbit.params[0])
        anchors.append(a)
        dirs.append((b[0] - a[0], b[1] - a[1]))
    return LineFamily(tuple(params), tuple(anchors), tuple(dirs))


def _intersect(p: Point2, d: Point2, q: Point2, e: Point2) -> Point2 | None:
    nd = math.hypot(*d)
    ne = math.hypot(*e)
    den = d[0] * e[1] - d[1] * e[0]
    if abs(den) < PARALLEL_EPS * nd * ne:
        return None
    s = ((q[0] - p[0]) * e[1] - (q[1] - p[1]) * e[0]) / den
    return (p[0] + s * d[0], p[1] + s * d[1])


def envelope_sample(family: LineFamily) -> list[Point2 | None]:
    """Envelope point per parameter via consecutive-line intersections.

    The two neighboring-pair intersections around each sample are averaged,
    which cancels the leading normal-direction bias of the secant method.
    Near-parallel neighbors produce None (a gap), not an error.
    """
    m = len(family)
    if m < 64:
        raise GeometryError(f"need >= 64 parameter samples, got {m}")
    crossings: list[Point2 | None] = []
    for i in range(m):
        j = (i + 1) % m
        crossings.append(
            _intersect(family.anchors[i], family.directions[i], family.anchors[j], family.directions[j])
        )
    out: list[Point2 | None] = []
    for i in range(m):
        left = crossings[(i - 1) % m]
        right = crossings[i]
        if left is None or right is None:
            out.append(None)
        else:
            out.append(((left[0] + right[0]) / 2.0, (left[1] + right[1]) / 2.0))
    return out


def tangency_residual(line_coeffs: tuple[float, float], caustic: CausticSpec) -> float:
    """For the line u x + v y = 1: a2^2 u^2 + b2^2 v^2 - 1, zero iff tangent."""
    u, v = line_coeffs
    return caustic.a2**2 * u * u + caustic.b2**2 * v * v - 1.0


def line_through(p: Point2, q: Point2) -> tuple[float, float]:
    """Coefficients (u, v) with u x + v y = 1 for the line through p and q.

    Raises for lines through the origin, which have no such normalization.
    """
    det = p[0] * q[1] - p[1] * q[0]
    if det == 0.0:
        raise GeometryError("line passes through the center; cannot normalize to ux + vy = 1")
    u = (q[1] - p[1]) / det
    v = (p[0] - q[0]) / det
    return (u, v)
