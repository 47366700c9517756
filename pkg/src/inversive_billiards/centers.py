"""Kimberling triangle centers in Cartesian coordinates.

Each supported center is a trilinear-coordinate function of the side lengths
(a, b, c) = (|BC|, |CA|, |AB|). Conversion to Cartesian goes through
barycentric weights (a*alpha, b*beta, c*gamma). The table is curated, not
exhaustive; unsupported indices raise UnsupportedCenterError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .geometry import Point2, Polygon, signed_area

Trilinear = tuple[float, float, float]
TrilinearFn = Callable[[float, float, float], Trilinear]


class CenterError(ValueError):
    """Triangle-center evaluation failed."""


class UnsupportedCenterError(CenterError):
    """Center index has no entry in the trilinear table."""

    def __init__(self, k: int):
        super().__init__(
            f"center X({k}) is not in the supported table; supported: {supported_center_ids()}"
        )
        self.k = k


@dataclass(frozen=True)
class Triangle:
    """Three vertices with derived side lengths s_a, s_b, s_c (opposite each vertex)."""

    vertices: tuple[Point2, Point2, Point2]
    s_a: float = field(init=False)
    s_b: float = field(init=False)
    s_c: float = field(init=False)

    def __post_init__(self) -> None:
        va, vb, vc = self.vertices
        object.__setattr__(self, "s_a", math.dist(vb, vc))
        object.__setattr__(self, "s_b", math.dist(vc, va))
        object.__setattr__(self, "s_c", math.dist(va, vb))
        area = signed_area(Polygon(self.vertices))
        scale = max(self.s_a, self.s_b, self.s_c)
        if abs(area) <= 1e-14 * scale * scale:
            raise CenterError(f"degenerate triangle, area {area:.3e}")

    @classmethod
    def from_points(cls, pts) -> "Triangle":
        p = tuple(pts)
        if len(p) != 3:
            raise CenterError(f"triangle needs exactly 3 vertices, got {len(p)}")
        return cls(vertices=p)


def _cosines(a: float, b: float, c: float) -> tuple[float, float, float]:
    return (
        (b * b + c * c - a * a) / (2.0 * b * c),
        (c * c + a * a - b * b) / (2.0 * c * a),
        (a * a + b * b - c * c) / (2.0 * a * b),
    )


def _cos_diff(ca: float, cb: float) -> float:
    # cos(B - C) from cos B, cos C with both angles in (0, pi)
    return ca * cb + math.sqrt(max(0.0, 1.0 - ca * ca)) * math.sqrt(max(0.0, 1.0 - cb * cb))


def _cyclic(f: Callable[..., float]) -> TrilinearFn:
    """Lift f(a, b, c, cosA, cosB, cosC) to a full trilinear triple."""

    def fn(a: float, b: float, c: float) -> Trilinear:
        ca, cb, cc = _cosines(a, b, c)
        return (f(a, b, c, ca, cb, cc), f(b, c, a, cb, cc, ca), f(c, a, b, cc, ca, cb))

    return fn


def _anticomplement(tril: Trilinear, a: float, b: float, c: float) -> Trilinear:
    x, y, z = tril[0] * a, tril[1] * b, tril[2] * c  # barycentric
    return ((-x + y + z) / a, (x - y + z) / b, (x + y - z) / c)


def _x150(a: float, b: float, c: float) -> Trilinear:
    # anticomplement of X(101) = a/(b - c)
    return _anticomplement((a / (b - c), b / (c - a), c / (a - b)), a, b, c)


# One entry per supported Kimberling index. Angle arguments follow the cyclic
# convention of _cyclic: (a, b, c, cA, cB, cC) evaluated at vertex A.
_TABLE: dict[int, TrilinearFn] = {
    1: _cyclic(lambda a, b, c, ca, cb, cc: 1.0),
    2: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / a),
    3: _cyclic(lambda a, b, c, ca, cb, cc: ca),
    4: _cyclic(lambda a, b, c, ca, cb, cc: cb * cc),
    5: _cyclic(lambda a, b, c, ca, cb, cc: _cos_diff(cb, cc)),
    7: _cyclic(lambda a, b, c, ca, cb, cc: b * c / (b + c - a)),
    8: _cyclic(lambda a, b, c, ca, cb, cc: (b + c - a) / a),
    9: _cyclic(lambda a, b, c, ca, cb, cc: b + c - a),
    10: _cyclic(lambda a, b, c, ca, cb, cc: (b + c) / a),
    11: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 - _cos_diff(cb, cc)),
    12: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 + _cos_diff(cb, cc)),
    20: _cyclic(lambda a, b, c, ca, cb, cc: ca - cb * cc),
    21: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (cb + cc)),
    35: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 + 2.0 * ca),
    36: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 - 2.0 * ca),
    40: _cyclic(lambda a, b, c, ca, cb, cc: cb + cc - ca - 1.0),
    46: _cyclic(lambda a, b, c, ca, cb, cc: cb + cc - ca),
    55: _cyclic(lambda a, b, c, ca, cb, cc: a * (b + c - a)),
    56: _cyclic(lambda a, b, c, ca, cb, cc: a / (b + c - a)),
    57: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (b + c - a)),
    63: _cyclic(lambda a, b, c, ca, cb, cc: ca / a),
    65: _cyclic(lambda a, b, c, ca, cb, cc: (b + c) / (b + c - a)),
    # X(73): validated against the locus behavior of the inversive family; the
    # twin form 1 - cosB cosC passes the same checks, see decision notes.
    73: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 + cb * cc),
    78: _cyclic(lambda a, b, c, ca, cb, cc: ca / (1.0 - ca)),
    79: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (1.0 + 2.0 * ca)),
    80: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (1.0 - 2.0 * ca)),
    84: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (cb + cc - ca - 1.0)),
    88: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (b + c - 2.0 * a)),
    90: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (cb + cc - ca)),
    100: _cyclic(lambda a, b, c, ca, cb, cc: 1.0 / (b - c)),
    150: _x150,
    162: _cyclic(
        lambda a, b, c, ca, cb, cc: 1.0 / ((b * b - c * c) * (b * b + c * c - a * a))
    ),
    934: _cyclic(
        lambda a, b, c, ca, cb, cc: 1.0 / ((b - c) * (b + c - a) ** 2)
    ),
}

# Indices claimed to sweep circles over the focus-inversive 3-periodic family.
INVERSIVE_CIRCLE_IDS: tuple[int, ...] = (
    1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 20, 21, 35, 36, 40, 46, 55, 56, 57, 63,
    65, 73, 78, 79, 80, 84, 90, 100,
)

# Indices whose locus over billiard 3-periodics is an ellipse (X9 is the
# stationary exception; X7 is stationary over the inversive family instead).
BILLIARD_ELLIPSE_IDS: tuple[int, ...] = (
    1, 2, 3, 4, 5, 7, 8, 10, 11, 12, 20, 21, 35, 36, 40, 46, 55, 56, 57, 63,
    65, 73, 78, 79, 80, 84, 88, 90, 100,
)

# Billiard-boundary riders: loci over billiard 3-periodics trace the billiard.
SWAN_IDS: tuple[int, ...] = (88, 100, 162)


def supported_center_ids() -> list[int]:
    return sorted(_TABLE)


def is_supported(k: int) -> bool:
    return k in _TABLE


def trilinear_to_cartesian(tri: Triangle, tril: Trilinear) -> Point2:
    """Convert trilinears to Cartesian via barycentric weights (a alpha, ...)."""
    a, b, c = tri.s_a, tri.s_b, tri.s_c
    w = (a * tril[0], b * tril[1], c * tril[2])
    den = w[0] + w[1] + w[2]
    if den == 0.0 or not math.isfinite(den):
        raise CenterError(f"trilinears {tril} give a point at infinity or overflow")
    (ax, ay), (bx, by), (cx, cy) = tri.vertices
    p = ((w[0] * ax + w[1] * bx + w[2] * cx) / den, (w[0] * ay + w[1] * by + w[2] * cy) / den)
    if not (math.isfinite(p[0]) and math.isfinite(p[1])):
        raise CenterError(f"center evaluation produced non-finite point {p}")
    return p


def center_trilinears(tri: Triangle, k: int) -> Trilinear:
    fn = _TABLE.get(k)
    if fn is None:
        raise UnsupportedCenterError(k)
    return fn(tri.s_a, tri.s_b, tri.s_c)


def center_point(tri: Triangle, k: int) -> Point2:
    """Cartesian position of Kimberling center X(k) of the triangle."""
    return trilinear_to_cartesian(tri, center_trilinears(tri, k))
