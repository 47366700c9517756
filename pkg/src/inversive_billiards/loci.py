"""Triangle-center loci over the billiard and inversive families: sweep,
fit circles/conics, classify, and compare with the closed-form circles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import EllipseSpec, GeometryError, Point2, ellipse_residual
from .inversive import InversiveConfig, center_inversive, focus_inversive
from .invariants import family_orbits
from .centers import Triangle, center_point

FAMILIES = ("billiard", "focus-inversive", "center-inversive")

# Ids with closed-form circle centers/radii for the focus-inversive family.
CIRCLE_REFERENCE_IDS = (1, 2, 3, 4, 5, 9, 11, 100)


class FitError(ValueError):
    """Degenerate input to a circle/conic fit."""


@dataclass(frozen=True)
class LocusTolerances:
    """Classification thresholds, all relative to the stated scales."""

    tol_point: float = 1e-9    # diameter / scale
    tol_circle: float = 1e-6   # circle rms / radius
    tol_conic: float = 1e-6    # conic rms / scale for an ellipse verdict
    tol_nonconic: float = 1e-3  # conic rms / scale above which non-conic is certain


@dataclass
class LocusSample:
    center_id: int
    family: str
    points: list[Point2]
    grid: int
    scale: float  # billiard major semiaxis, for tolerance scaling

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GeometryError(f"unknown family {self.family!r}; use one of {FAMILIES}")
        for p in self.points:
            if not (math.isfinite(p[0]) and math.isfinite(p[1])):
                raise GeometryError(f"non-finite locus point {p}")


@dataclass(frozen=True)
class CircleFit:
    center: Point2
    radius: float
    rms: float


@dataclass(frozen=True)
class ConicFit:
    coefficients: tuple[float, float, float, float, float, float]  # A,B,C,D,E,F, unit norm
    kind: str  # ellipse | parabola | hyperbola | degenerate
    rms: float
    center: Point2 | None = None
    semi_axes: tuple[float, float] | None = None  # (x-aligned, y-aligned) before rotation
    angle: float | None = None


@dataclass(frozen=True)
class LocusClass:
    verdict: str  # point | circle | ellipse | non-conic
    diameter: float
    circle: CircleFit | None
    conic: ConicFit | None
    tolerances: LocusTolerances


def fit_circle(points) -> CircleFit:
    """Algebraic least-squares circle with one geometric Gauss-Newton step."""
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] < 3:
        raise FitError(f"need >= 3 points for a circle fit, got {pts.shape[0]}")
    x, y = pts[:, 0], pts[:, 1]
    design = np.column_stack([x, y, np.ones_like(x)])
    if np.linalg.matrix_rank(design - design.mean(axis=0), tol=1e-12 * max(1.0, float(np.abs(pts).max()))) < 2:
        raise FitError("points are collinear (or coincident); circle fit is degenerate")
    sol, *_ = np.linalg.lstsq(design, x * x + y * y, rcond=None)
    cx, cy = sol[0] / 2.0, sol[1] / 2.0
    radius = math.sqrt(max(sol[2] + cx * cx + cy * cy, 0.0))
    # One Gauss-Newton refinement on the geometric residuals.
    dx, dy = x - cx, y - cy
    dist = np.hypot(dx, dy)
    if np.all(dist > 0.0) and radius > 0.0:
        res = dist - radius
        jac = np.column_stack([-dx / dist, -dy / dist, -np.ones_like(dist)])
        step, *_ = np.linalg.lstsq(jac, -res, rcond=None)
        cx, cy, radius = cx + step[0], cy + step[1], radius + step[2]
    dist = np.hypot(x - cx, y - cy)
    rms = float(np.sqrt(np.mean((dist - radius) ** 2)))
    return CircleFit(center=(float(cx), float(cy)), radius=float(radius), rms=rms)


def fit_conic(points) -> ConicFit:
    """Least-squares conic through the points (normalized coordinates, SVD).

    The rms is a Sampson (first-order geometric) distance in the original
    length units.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] < 6:
        raise FitError(f"need >= 6 points for a conic fit, got {pts.shape[0]}")
    mu = pts.mean(axis=0)
    spread = pts.std(axis=0).mean()
    if spread == 0.0:
        raise FitError("coincident points; conic fit is degenerate")
    q = (pts - mu) / spread
    x, y = q[:, 0], q[:, 1]
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    if np.linalg.matrix_rank(design, tol=1e-10) < 5:
        raise FitError("rank-deficient conic design (points on a line?)")
    _, _, vt = np.linalg.svd(design, full_matrices=False)
    theta = vt[-1]
    a_, b_, c_, d_, e_, f_ = theta
    g = design @ theta
    gx = 2.0 * a_ * x + b_ * y + d_
    gy = b_ * x + 2.0 * c_ * y + e_
    grad = np.hypot(gx, gy)
    grad = np.where(grad == 0.0, 1e-300, grad)
    rms = float(np.sqrt(np.mean((g / grad) ** 2))) * spread

    # De-normalize: substitute x -> (X - mux)/s, y -> (Y - muy)/s and collect.
    s = spread
    mx, my = mu
    A = a_ / (s * s)
    B = b_ / (s * s)
    C = c_ / (s * s)
    D = -2.0 * a_ * mx / (s * s) - b_ * my / (s * s) + d_ / s
    E = -b_ * mx / (s * s) - 2.0 * c_ * my / (s * s) + e_ / s
    F = (a_ * mx * mx + b_ * mx * my + c_ * my * my) / (s * s) - (d_ * mx + e_ * my) / s + f_
    coeff = np.array([A, B, C, D, E, F])
    coeff /= np.linalg.norm(coeff)
    A, B, C, D, E, F = coeff

    full = np.array([[A, B / 2.0, D / 2.0], [B / 2.0, C, E / 2.0], [D / 2.0, E / 2.0, F]])
    disc = B * B - 4.0 * A * C
    if abs(np.linalg.det(full)) < 1e-12:
        kind = "degenerate"
    elif disc < 0.0:
        kind = "ellipse"
    elif disc == 0.0:
        kind = "parabola"
    else:
        kind = "hyperbola"

    center = None
    semi_axes = None
    angle = None
    if kind == "ellipse":
        m = np.array([[2.0 * A, B], [B, 2.0 * C]])
        cx, cy = np.linalg.solve(m, [-D, -E])
        f0 = A * cx * cx + B * cx * cy + C * cy * cy + D * cx + E * cy + F
        q2 = np.array([[A, B / 2.0], [B / 2.0, C]])
        evals, evecs = np.linalg.eigh(q2)
        with np.errstate(invalid="ignore"):
            axes2 = -f0 / evals
        if np.any(axes2 <= 0.0):
            kind = "degenerate"
        else:
            # report axes in eigen order with their directions
            ax = np.sqrt(axes2)
            angle = float(math.atan2(evecs[1, 0], evecs[0, 0]) % math.pi)
            center = (float(cx), float(cy))
            semi_axes = (float(ax[0]), float(ax[1]))
    return ConicFit(
        coefficients=tuple(float(v) for v in coeff),
        kind=kind,
        rms=rms,
        center=center,
        semi_axes=semi_axes,
        angle=angle,
    )


def locus_diameter(points) -> float:
    pts = np.asarray(points, dtype=float)
    return float(
        math.hypot(pts[:, 0].max() - pts[:, 0].min(), pts[:, 1].max() - pts[:, 1].min())
    )


def classify_locus(sample: LocusSample, tols: LocusTolerances | None = None) -> LocusClass:
    """Point / circle / ellipse / non-conic verdict with supporting fits."""
    tols = tols or LocusTolerances()
    if sample.grid < 32:
        raise GeometryError(f"grid must be >= 32 for classification, got {sample.grid}")
    diam = locus_diameter(sample.points)
    if diam < tols.tol_point * sample.scale:
        return LocusClass("point", diam, None, None, tols)
    circle = fit_circle(sample.points)
    if circle.rms < tols.tol_circle * circle.radius:
        return LocusClass("circle", diam, circle, None, tols)
    conic = fit_conic(sample.points)
    if conic.kind == "ellipse" and conic.rms < tols.tol_conic * sample.scale:
        return LocusClass("ellipse", diam, circle, conic, tols)
    return LocusClass("non-conic", diam, circle, conic, tols)


def family_triangle(orbit, family: str, config: InversiveConfig) -> Triangle:
    if family == "billiard":
        return Triangle.from_points(orbit.vertices)
    if family == "focus-inversive":
        return Triangle.from_points(focus_inversive(orbit, config).vertices)
    if family == "center-inversive":
        return Triangle.from_points(center_inversive(orbit, config.rho).vertices)
    raise GeometryError(f"unknown family {family!r}")


def sweep_locus(
    ellipse: EllipseSpec,
    config: InversiveConfig,
    center_id: int,
    family: str = "focus-inversive",
    grid: int = 256,
) -> LocusSample:
    """One triangle-center point per grid parameter of the N=3 family."""
    if ellipse.c == 0.0:
        raise GeometryError("locus sweeps require a > b")
    points: list[Point2] = []
    for orbit in family_orbits(ellipse, 3, grid):
        tri = family_triangle(orbit, family, config)
        try:
            points.append(center_point(tri, center_id))
        except Exception as exc:
            raise GeometryError(
                f"center X({center_id}) evaluation failed at t1={orbit.params[0]}: {exc}"
            ) from exc
    return LocusSample(center_id=center_id, family=family, points=points, grid=grid, scale=ellipse.a)


def circle_locus_reference(ellipse: EllipseSpec, rho: float, center_id: int) -> tuple[Point2, float]:
    """Closed-form circle (center, radius) of X(k) over the focus-inversive family.

    Available for k in CIRCLE_REFERENCE_IDS. The reference centers follow the
    (+c)-focus sign convention for some ids, so compare modulo the x-mirror.
    """
    a, b = ellipse.a, ellipse.b
    if ellipse.c == 0.0:
        raise GeometryError("circle references require a > b")
    d, c = ellipse.delta, ellipse.c
    r2 = rho * rho
    b2, b4 = b * b, b**4
    a2 = a * a
    if center_id == 1:
        return ((c * (-1.0 + r2 * (-2 * a2 + b2 + 2 * d) / (2 * b4)), 0.0),
                r2 * (-2 * d * d + b4 + (2 * a2 - b2) * d) / (2 * a * b4))
    if center_id == 2:
        return ((-c * (1.0 + r2 * (2 * a2 - b2 - d) / (3 * a2 * b2)), 0.0),
                r2 * (2 * a2 - b2 - d) / (3 * a * b2))
    if center_id == 3:
        return ((-c * (1.0 + r2 * (a2 + b2) / (2 * b4)), 0.0),
                r2 * a * (d - b2) / (2 * b4))
    if center_id == 4:
        return ((c * (-1.0 + r2 * (b2 + d) * d / (a2 * b4)), 0.0),
                r2 * c * c * (b2 + d) / (a * b4))
    if center_id == 5:
        return ((c * (-1.0 + r2 * (a2 * a2 - 3 * a2 * b2 + 2 * b4 + 2 * b2 * d) / (4 * a2 * b4)), 0.0),
                r2 * ((3 * a2 - 2 * b2) * b2 + (a2 - 2 * b2) * d) / (4 * a * b2))
    if center_id == 9:
        return ((-c * (1.0 + r2 / (2 * b2)), 0.0), r2 * (2 * a2 - b2 - d) / (2 * a * b2))
    if center_id == 11:
        return ((c * (-1.0 + r2 * (-a2 + b2 + d) / (2 * a2 * b2)), 0.0),
                r2 * (-a2 + b2 + d) / (2 * a * b2))
    if center_id == 100:
        return ((-c * (1.0 + r2 / b2), 0.0), r2 * a / b2)
    raise GeometryError(
        f"no closed-form circle for X({center_id}); available: {CIRCLE_REFERENCE_IDS}"
    )


@dataclass(frozen=True)
class MirrorMatch:
    """Best match of a fitted center against a reference, allowing x-mirror."""

    branch: str  # "direct" or "mirrored"
    center_error: float
    radius_error: float


def match_circle_modulo_mirror(fit: CircleFit, ref_center: Point2, ref_radius: float) -> MirrorMatch:
    d_plain = math.dist(fit.center, ref_center)
    d_mirror = math.dist(fit.center, (-ref_center[0], ref_center[1]))
    branch = "direct" if d_plain <= d_mirror else "mirrored"
    return MirrorMatch(
        branch=branch,
        center_error=min(d_plain, d_mirror),
        radius_error=abs(fit.radius - ref_radius),
    )


@dataclass
class SwanReport:
    center_id: int
    max_billiard_residual: float  # max |f(P) - 1| over the billiard-family locus
    inversive_verdict: str
    inversive_class: LocusClass


def swan_check(
    ellipse: EllipseSpec,
    center_id: int,
    rho: float = 1.0,
    grid: int = 256,
    tols: LocusTolerances | None = None,
) -> SwanReport:
    """Billiard-family locus against the billiard boundary, plus the
    focus-inversive classification of the same center."""
    if center_id not in (88, 100, 162):
        raise GeometryError(f"swan check supports ids 88, 100, 162; got {center_id}")
    config = InversiveConfig(1, rho)
    billiard = sweep_locus(ellipse, config, center_id, "billiard", grid)
    worst = max(abs(ellipse_residual(ellipse, p)) for p in billiard.points)
    inversive = sweep_locus(ellipse, config, center_id, "focus-inversive", grid)
    cls = classify_locus(inversive, tols)
    return SwanReport(center_id, worst, cls.verdict, cls)


@dataclass
class CenterInversiveX3Report:
    billiard_class: LocusClass
    inverted_class: LocusClass
    billiard_axes: tuple[float, float]   # (x-aligned, y-aligned) semiaxes
    inverted_axes: tuple[float, float]
    homothety_errors: tuple[float, float]  # relative error of axes ratio vs 1/delta
    center_offsets: tuple[float, float]    # |center|/a of the two fitted loci
    alignment_errors: tuple[float, float]  # min angle to the axes, radians
    aspect_product_error: float            # |aspect(locus)*aspect(caustic) - 1|
    power_max_deviation: float             # max |(|OX3|^2 - R^2) + delta|


def _axis_aligned_semiaxes(conic: ConicFit) -> tuple[float, float]:
    """Semiaxes of an (assumed axis-aligned) ellipse fit as (x, y) components."""
    assert conic.semi_axes is not None and conic.angle is not None
    ax, ay = conic.semi_axes
    # angle is the direction of the first eigen axis; snap to x or y
    ang = conic.angle % math.pi
    if min(ang, math.pi - ang) < math.pi / 4.0:
        return (ax, ay)
    return (ay, ax)


def center_inversive_x3_check(
    ellipse: EllipseSpec, grid: int = 256, tols: LocusTolerances | None = None
) -> CenterInversiveX3Report:
    """Circumcenter locus of the unit-circle center-inversive family against
    the billiard circumcenter locus: concentric, axis-aligned, homothetic at
    ratio 1/delta; aspect reciprocal to the caustic's; constant power of the
    billiard center with respect to the circumcircle, equal to -delta."""
    from .orbits import confocal_caustic_n3

    if ellipse.c == 0.0:
        raise GeometryError("requires a > b")
    config = InversiveConfig(1, 1.0)
    billiard = sweep_locus(ellipse, config, 3, "billiard", grid)
    inverted = sweep_locus(ellipse, config, 3, "center-inversive", grid)

    power_dev = 0.0
    for orbit in family_orbits(ellipse, 3, grid):
        tri = Triangle.from_points(orbit.vertices)
        x3 = center_point(tri, 3)
        radius = math.dist(x3, orbit.vertices[0])
        power = x3[0] ** 2 + x3[1] ** 2 - radius * radius
        power_dev = max(power_dev, abs(power + ellipse.delta))

    cls_b = classify_locus(billiard, tols)
    cls_i = classify_locus(inverted, tols)
    if cls_b.conic is None or cls_i.conic is None or cls_b.verdict != "ellipse" or cls_i.verdict != "ellipse":
        raise GeometryError(
            f"expected elliptic loci, got {cls_b.verdict} and {cls_i.verdict}"
        )
    axes_b = _axis_aligned_semiaxes(cls_b.conic)
    axes_i = _axis_aligned_semiaxes(cls_i.conic)
    delta = ellipse.delta
    homothety = (
        abs(axes_b[0] / axes_i[0] - delta) / delta,
        abs(axes_b[1] / axes_i[1] - delta) / delta,
    )
    caustic = confocal_caustic_n3(ellipse)
    aspect_locus = axes_i[0] / axes_i[1]
    aspect_caustic = caustic.a2 / caustic.b2
    offsets = (
        math.hypot(*cls_b.conic.center) / ellipse.a,
        math.hypot(*cls_i.conic.center) / ellipse.a,
    )
    def axis_misalign(angle: float) -> float:
        ang = angle % (math.pi / 2.0)
        return min(ang, math.pi / 2.0 - ang)

    return CenterInversiveX3Report(
        billiard_class=cls_b,
        inverted_class=cls_i,
        billiard_axes=axes_b,
        inverted_axes=axes_i,
        homothety_errors=homothety,
        center_offsets=offsets,
        alignment_errors=(axis_misalign(cls_b.conic.angle), axis_misalign(cls_i.conic.angle)),
        aspect_product_error=abs(aspect_locus * aspect_caustic - 1.0),
        power_max_deviation=power_dev,
    )
