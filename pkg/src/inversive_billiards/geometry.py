"""Primitive planar geometry: ellipse evaluation, circle inversion, polygon metrics.

The ellipse is always centered at the origin and axis-aligned, with implicit
equation f(x, y) = (x/a)^2 + (y/b)^2 = 1. All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

Point2 = tuple[float, float]


class GeometryError(ValueError):
    """Invalid geometric input (bad semiaxes, degenerate polygon, ...)."""


class SingularInversionError(GeometryError):
    """Point to invert coincides with the inversion center."""


@dataclass(frozen=True)
class EllipseSpec:
    """Axis-aligned origin-centered ellipse with derived constants.

    a >= b > 0. Derived: c = sqrt(a^2 - b^2) (focal half-distance),
    delta = sqrt(a^4 - a^2 b^2 + b^4), eps = c/a (eccentricity).
    """

    a: float
    b: float
    c: float = field(init=False)
    delta: float = field(init=False)
    eps: float = field(init=False)

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if not (math.isfinite(a) and math.isfinite(b)):
            raise GeometryError(f"semiaxes must be finite, got a={a}, b={b}")
        if b <= 0.0:
            raise GeometryError(f"semiaxes must be positive, got a={a}, b={b}")
        if a < b:
            raise GeometryError(f"major semiaxis must satisfy a >= b, got a={a}, b={b}")
        object.__setattr__(self, "c", math.sqrt(a * a - b * b))
        object.__setattr__(self, "delta", math.sqrt(a**4 - a * a * b * b + b**4))
        object.__setattr__(self, "eps", self.c / a)

    @property
    def foci(self) -> tuple[Point2, Point2]:
        """Focus pair, f1 on the negative x side: ((-c, 0), (+c, 0))."""
        return (-self.c, 0.0), (self.c, 0.0)


@dataclass(frozen=True)
class CircleSpec:
    center: Point2
    radius: float

    def __post_init__(self) -> None:
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise GeometryError(f"circle radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class Polygon:
    """Ordered vertex list, length >= 3, consecutive vertices distinct."""

    vertices: tuple[Point2, ...]

    def __post_init__(self) -> None:
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise GeometryError(f"polygon needs >= 3 vertices, got {n}")
        scale = max(max(abs(x), abs(y)) for x, y in verts) or 1.0
        for i in range(n):
            x0, y0 = verts[i]
            x1, y1 = verts[(i + 1) % n]
            if math.hypot(x1 - x0, y1 - y0) <= 1e-12 * scale:
                raise GeometryError(f"vertices {i} and {(i + 1) % n} nearly coincide")

    def __len__(self) -> int:
        return len(self.vertices)


def make_ellipse(a: float, b: float) -> EllipseSpec:
    """Build an EllipseSpec, rejecting nonpositive/NaN semiaxes and a < b."""
    return EllipseSpec(float(a), float(b))


def ellipse_point(ellipse: EllipseSpec, t: float) -> Point2:
    """Boundary point (a cos t, b sin t)."""
    return (ellipse.a * math.cos(t), ellipse.b * math.sin(t))


def ellipse_gradient(ellipse: EllipseSpec, p: Point2) -> Point2:
    """Gradient of f(x, y) = (x/a)^2 + (y/b)^2 at p, i.e. 2(x/a^2, y/b^2)."""
    return (2.0 * p[0] / ellipse.a**2, 2.0 * p[1] / ellipse.b**2)


def ellipse_residual(ellipse: EllipseSpec, p: Point2) -> float:
    """f(p) - 1; zero iff p lies on the ellipse."""
    return (p[0] / ellipse.a) ** 2 + (p[1] / ellipse.b) ** 2 - 1.0


def invert_point(p: Point2, circle: CircleSpec) -> Point2:
    """Circle inversion: center + (radius/d)^2 (p - center), d = |p - center|."""
    cx, cy = circle.center
    dx, dy = p[0] - cx, p[1] - cy
    d2 = dx * dx + dy * dy
    if d2 == 0.0:
        raise SingularInversionError("cannot invert the inversion center")
    s = circle.radius * circle.radius / d2
    return (cx + s * dx, cy + s * dy)


def limacon_point(ellipse: EllipseSpec, rho: float, t: float) -> Point2:
    """Point of the limacon traced by inverting the ellipse about a focus.

    Defined as the inversion of ellipse_point(t) in the circle of radius rho
    centered on the focus (-c, 0); in polar form about that focus the radius
    is (rho^2 a / b^2)(1 - eps cos theta).
    """
    if not rho > 0.0:
        raise GeometryError(f"inversion radius must be positive, got {rho}")
    f1 = (-ellipse.c, 0.0)
    return invert_point(ellipse_point(ellipse, t), CircleSpec(f1, rho))


def signed_area(poly: Polygon) -> float:
    """Shoelace area: positive for counterclockwise vertex order."""
    verts = poly.vertices
    acc = 0.0
    for i, (x0, y0) in enumerate(verts):
        x1, y1 = verts[(i + 1) % len(verts)]
        acc += x0 * y1 - x1 * y0
    return 0.5 * acc


def perimeter(poly: Polygon) -> float:
    verts = poly.vertices
    return sum(
        math.hypot(verts[(i + 1) % len(verts)][0] - x, verts[(i + 1) % len(verts)][1] - y)
        for i, (x, y) in enumerate(verts)
    )


def interior_cosines(poly: Polygon) -> list[float]:
    """Cosine of the vertex angle between the two edges leaving each vertex.

    Uses the normalized dot product of the edge directions, so it is valid
    for non-convex (and self-intersecting) polygons.
    """
    verts = poly.vertices
    n = len(verts)
    out = []
    for i in range(n):
        px, py = verts[i]
        ax, ay = verts[(i - 1) % n][0] - px, verts[(i - 1) % n][1] - py
        bx, by = verts[(i + 1) % n][0] - px, verts[(i + 1) % n][1] - py
        na = math.hypot(ax, ay)
        nb = math.hypot(bx, by)
        cosine = (ax * bx + ay * by) / (na * nb)
        out.append(max(-1.0, min(1.0, cosine)))
    return out
