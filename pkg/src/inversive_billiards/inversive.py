"""Polygon families derived from billiard orbits by circle inversion.

Focus-inversive polygons (inversion circle centered on a focus, so the family
is inscribed in a limacon), center-inversive polygons (circle concentric with
the billiard, family inscribed in Booth's curve), and pedal polygons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    CircleSpec,
    EllipseSpec,
    GeometryError,
    Point2,
    Polygon,
    invert_point,
)
from .orbits import Orbit


@dataclass(frozen=True)
class InversiveConfig:
    """Inversion circle choice: focus 1 at (-c, 0), focus 2 at (+c, 0), radius rho."""

    focus_index: int = 1
    rho: float = 1.0

    def __post_init__(self) -> None:
        if self.focus_index not in (1, 2):
            raise GeometryError(f"focus_index must be 1 or 2, got {self.focus_index}")
        if not self.rho > 0.0:
            raise GeometryError(f"inversion radius must be positive, got {self.rho}")

    def focus(self, ellipse: EllipseSpec) -> Point2:
        return ellipse.foci[self.focus_index - 1]

    def circle(self, ellipse: EllipseSpec) -> CircleSpec:
        return CircleSpec(self.focus(ellipse), self.rho)


@dataclass(frozen=True)
class InversivePolygon:
    """Inversion of an orbit's vertices, with the focus-to-vertex spoke lengths."""

    base: Orbit
    config: InversiveConfig
    vertices: tuple[Point2, ...]
    spokes: tuple[float, ...]

    @property
    def polygon(self) -> Polygon:
        return Polygon(self.vertices)


def focus_inversive(orbit: Orbit, config: InversiveConfig) -> InversivePolygon:
    """Invert the orbit vertices in the focus-centered circle of the config."""
    if orbit.ellipse.c == 0.0:
        raise GeometryError("focus inversion requires a > b (distinct foci)")
    circle = config.circle(orbit.ellipse)
    fx, fy = circle.center
    vertices = tuple(invert_point(p, circle) for p in orbit.vertices)
    spokes = tuple(math.hypot(p[0] - fx, p[1] - fy) for p in orbit.vertices)
    return InversivePolygon(base=orbit, config=config, vertices=vertices, spokes=spokes)


def center_inversive(orbit: Orbit, rho: float = 1.0) -> Polygon:
    """Invert the orbit vertices in the circle of radius rho about the billiard center."""
    circle = CircleSpec((0.0, 0.0), rho)
    return Polygon(tuple(invert_point(p, circle) for p in orbit.vertices))


def pedal_polygon(poly: Polygon, pivot: Point2) -> Polygon:
    """Feet of the perpendiculars from pivot onto each side line of poly."""
    verts = poly.vertices
    n = len(verts)
    feet = []
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        dx, dy = bx - ax, by - ay
        denom = dx * dx + dy * dy
        if denom == 0.0:
            raise GeometryError(f"zero-length side {i}")
        s = ((pivot[0] - ax) * dx + (pivot[1] - ay) * dy) / denom
        feet.append((ax + s * dx, ay + s * dy))
    return Polygon(tuple(feet))


def spoke_stats(orbit: Orbit, focus_index: int = 1) -> tuple[list[float], float]:
    """Spoke lengths d_i from the chosen focus to each vertex, and sum(1/d_i)."""
    fx, fy = orbit.ellipse.foci[focus_index - 1]
    d_list = [math.hypot(p[0] - fx, p[1] - fy) for p in orbit.vertices]
    return d_list, sum(1.0 / d for d in d_list)
