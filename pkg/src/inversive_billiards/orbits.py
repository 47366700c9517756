"""N-periodic billiard orbits in an ellipse.

Closed-form 3-periodics, a general-N solver (confocal-caustic shooting plus
Newton polish on the reflection residuals), the per-orbit Joachimsthal
constant, and the confocal caustic of the 3-periodic family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    EllipseSpec,
    GeometryError,
    Point2,
    ellipse_gradient,
    ellipse_point,
    ellipse_residual,
)

TWO_PI = 2.0 * math.pi

# Newton polish on reflection residuals (finite-difference Jacobian).
NEWTON_FD_STEP = 1e-7
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50

# Relative spread of per-vertex Joachimsthal values above which an Orbit is
# rejected as not actually periodic.
J_SPREAD_TOL = 1e-8


class OrbitError(ValueError):
    """Input is not a valid billiard orbit."""


class SolverError(RuntimeError):
    """The N-periodic solver failed to converge or collapsed."""


@dataclass(frozen=True)
class Orbit:
    """An N-periodic: boundary parameters, vertices, per-vertex J values."""

    ellipse: EllipseSpec
    n: int
    params: tuple[float, ...]
    vertices: tuple[Point2, ...]
    j_values: tuple[float, ...]

    @property
    def j_mean(self) -> float:
        return sum(self.j_values) / self.n

    @property
    def j_spread(self) -> float:
        """Max relative deviation of per-vertex J from the mean."""
        mean = self.j_mean
        return max(abs(j - mean) for j in self.j_values) / abs(mean)


@dataclass(frozen=True)
class CausticSpec:
    """Confocal caustic ellipse with semiaxes a2 > b2 > 0 (a2 may equal b2 for circles)."""

    a2: float
    b2: float

    def __post_init__(self) -> None:
        if not (0.0 < self.b2 <= self.a2):
            raise GeometryError(f"caustic semiaxes must satisfy 0 < b2 <= a2, got {self!r}")


def _unit(vx: float, vy: float) -> Point2:
    norm = math.hypot(vx, vy)
    return (vx / norm, vy / norm)


def reflection_residual(ellipse: EllipseSpec, t_prev: float, t: float, t_next: float) -> float:
    """Signed mirror-law defect at the bounce point ellipse_point(t).

    Zero iff the chords to t_prev and t_next make equal angles with the
    tangent; computed as the tangential component of the sum of the two unit
    chord directions, so it is smooth in t and changes sign across a root.
    """
    px, py = ellipse_point(ellipse, t)
    qx, qy = ellipse_point(ellipse, t_prev)
    rx, ry = ellipse_point(ellipse, t_next)
    if (qx - px) ** 2 + (qy - py) ** 2 == 0.0 or (rx - px) ** 2 + (ry - py) ** 2 == 0.0:
        raise OrbitError("coincident bounce parameters")
    ux, uy = _unit(qx - px, qy - py)
    vx, vy = _unit(rx - px, ry - py)
    # Unit tangent at t.
    tx, ty = _unit(-ellipse.a * math.sin(t), ellipse.b * math.cos(t))
    return (ux + vx) * tx + (uy + vy) * ty


def _vertex_j(ellipse: EllipseSpec, p: Point2, p_prev: Point2) -> float:
    """J = (1/2) grad f . v, with v the unit incoming direction (positive)."""
    gx, gy = ellipse_gradient(ellipse, p)
    vx, vy = _unit(p[0] - p_prev[0], p[1] - p_prev[1])
    return 0.5 * (gx * vx + gy * vy)


def _build_orbit(ellipse: EllipseSpec, params: list[float]) -> Orbit:
    n = len(params)
    vertices = tuple(ellipse_point(ellipse, t) for t in params)
    j_values = tuple(
        _vertex_j(ellipse, vertices[i], vertices[(i - 1) % n]) for i in range(n)
    )
    return Orbit(ellipse=ellipse, n=n, params=tuple(params), vertices=vertices, j_values=j_values)


def joachimsthal(ellipse: EllipseSpec, orbit: Orbit) -> float:
    """Mean per-vertex J; rejects inputs whose per-vertex spread is non-orbit-like."""
    if orbit.j_spread > J_SPREAD_TOL:
        raise OrbitError(
            f"per-vertex J spread {orbit.j_spread:.3e} exceeds {J_SPREAD_TOL:.0e}; not an orbit"
        )
    return orbit.j_mean


def n3_closed_form_JL(ellipse: EllipseSpec) -> tuple[float, float]:
    """Closed-form (J, L) of the 3-periodic family: J = sqrt(2 delta - a^2 - b^2)/c^2,
    L = 2 (delta + a^2 + b^2) J."""
    a, b, delta = ellipse.a, ellipse.b, ellipse.delta
    if ellipse.c == 0.0:
        raise GeometryError("closed form requires a > b; use solve_nperiodic for circles")
    j = math.sqrt(2.0 * delta - a * a - b * b) / ellipse.c**2
    return j, 2.0 * (delta + a * a + b * b) * j


def confocal_caustic_n3(ellipse: EllipseSpec) -> CausticSpec:
    """Caustic of the 3-periodic family: a2 = a(delta - b^2)/c^2, b2 = b(a^2 - delta)/c^2."""
    if ellipse.c == 0.0:
        raise GeometryError("3-periodic caustic formula requires a > b")
    c2 = ellipse.c**2
    return CausticSpec(
        a2=ellipse.a * (ellipse.delta - ellipse.b**2) / c2,
        b2=ellipse.b * (ellipse.a**2 - ellipse.delta) / c2,
    )


def stachel_j(ellipse: EllipseSpec, caustic_a: float) -> float:
    """J from the caustic major semiaxis: sqrt(a^2 - a2^2)/(a b)."""
    if not 0.0 < caustic_a < ellipse.a:
        raise GeometryError(f"caustic semiaxis must lie in (0, a), got {caustic_a}")
    return math.sqrt(ellipse.a**2 - caustic_a**2) / (ellipse.a * ellipse.b)


def three_periodic(ellipse: EllipseSpec, t1: float) -> Orbit:
    """Closed-form 3-periodic through ellipse_point(t1), oriented counterclockwise.

    Near-circular tables (aspect ratio below 1.003) lose precision in the
    closed form's c^2 denominators, so they are routed through the solver.
    """
    a, b = ellipse.a, ellipse.b
    if ellipse.c == 0.0:
        raise GeometryError("closed form requires a > b; use solve_nperiodic for circles")
    if (a - b) / b < 3e-3:
        return solve_nperiodic(ellipse, 3, t1)
    x1, y1 = ellipse_point(ellipse, t1)
    a2, b2, c2 = a * a, b * b, ellipse.c**2
    d1 = (a * b) ** 2 / c2
    d2 = b2 * b2 * x1 * x1 + a2 * a2 * y1 * y1
    delta1_sq = 2.0 * ellipse.delta - a2 - b2
    k1 = d1 * d1 * delta1_sq / d2  # cos^2(alpha)
    k1 = min(k1, 1.0)
    k2 = math.sqrt(k1 * (1.0 - k1))  # |sin(alpha) cos(alpha)|; sign fixed below

    def vertex(sign: float) -> Point2:
        k2s = sign * k2
        x = (
            b2 * b2 * (a2 - (a2 + b2) * k1) * x1**3
            - 2.0 * a2 * a2 * b2 * k2s * x1 * x1 * y1
            + a2 * a2 * ((a2 - 3.0 * b2) * k1 + b2) * x1 * y1 * y1
            - 2.0 * a2**3 * k2s * y1**3
        )
        y = (
            2.0 * b2**3 * k2s * x1**3
            + b2 * b2 * ((b2 - 3.0 * a2) * k1 + a2) * x1 * x1 * y1
            + 2.0 * a2 * b2 * b2 * k2s * x1 * y1 * y1
            - a2 * a2 * ((a2 + b2) * k1 - b2) * y1**3
        )
        q = (
            b2 * b2 * (a2 - c2 * k1) * x1 * x1
            + a2 * a2 * (b2 + c2 * k1) * y1 * y1
            - 2.0 * a2 * b2 * c2 * k2s * x1 * y1
        )
        return (x / q, y / q)

    p2, p3 = vertex(1.0), vertex(-1.0)
    # Orient counterclockwise (positive cross product P1P2 x P1P3).
    cross = (p2[0] - x1) * (p3[1] - y1) - (p2[1] - y1) * (p3[0] - x1)
    if cross < 0.0:
        p2, p3 = p3, p2

    t2 = math.atan2(p2[1] / b, p2[0] / a) % TWO_PI
    t3 = math.atan2(p3[1] / b, p3[0] / a) % TWO_PI
    orbit = _build_orbit(ellipse, [t1 % TWO_PI, t2, t3])
    for i in range(3):
        res = reflection_residual(
            ellipse, orbit.params[i - 1], orbit.params[i], orbit.params[(i + 1) % 3]
        )
        if abs(res) > 1e-10:
            raise SolverError(f"closed-form 3-periodic violates reflection at vertex {i}: {res:.3e}")
    return orbit


# ---------------------------------------------------------------------------
# General-N solver: shoot along tangents to a confocal caustic, bisect the
# caustic until the chain closes after n bounces (winding 1), then Newton.
# ---------------------------------------------------------------------------


def _tangent_advance(ellipse: EllipseSpec, caustic: CausticSpec, t: float) -> float:
    """Parameter of the next bounce along the CCW chord tangent to the caustic."""
    px, py = ellipse_point(ellipse, t)
    rx, ry = px / caustic.a2, py / caustic.b2
    r = math.hypot(rx, ry)  # > 1: boundary point is exterior to the caustic
    phi = math.atan2(ry, rx)
    u = phi + math.acos(min(1.0, 1.0 / r))
    qx, qy = caustic.a2 * math.cos(u), caustic.b2 * math.sin(u)
    dx, dy = qx - px, qy - py
    alpha = (dx / ellipse.a) ** 2 + (dy / ellipse.b) ** 2
    beta = 2.0 * (px * dx / ellipse.a**2 + py * dy / ellipse.b**2)
    s = -beta / alpha  # second root; s=0 is the current vertex
    nx, ny = px + s * dx, py + s * dy
    return math.atan2(ny / ellipse.b, nx / ellipse.a) % TWO_PI


def _chain(ellipse: EllipseSpec, caustic: CausticSpec, t1: float, n: int) -> tuple[list[float], float]:
    """Chain n tangent chords from t1; returns parameters and total rotation."""
    params = [t1]
    total = 0.0
    t = t1
    for _ in range(n):
        t_next = _tangent_advance(ellipse, caustic, t)
        step = (t_next - t) % TWO_PI
        total += step
        params.append(t_next)
        t = t_next
    return params, total


def _caustic_for_rotation(ellipse: EllipseSpec, n: int, t1: float) -> CausticSpec:
    """Bisect the confocal caustic minor semiaxis until n chords rotate by 2 pi."""
    c2 = ellipse.c**2

    def total_rotation(b2: float) -> float:
        caustic = CausticSpec(a2=math.sqrt(c2 + b2 * b2), b2=b2)
        return _chain(ellipse, caustic, t1, n)[1]

    lo, hi = 1e-9 * ellipse.b, ellipse.b * (1.0 - 1e-12)
    if total_rotation(lo) < TWO_PI:
        raise SolverError(f"no winding-1 {n}-periodic bracket for {ellipse!r}")
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        if total_rotation(mid) > TWO_PI:
            lo = mid
        else:
            hi = mid
    b2 = 0.5 * (lo + hi)
    return CausticSpec(a2=math.sqrt(c2 + b2 * b2), b2=b2)


def _newton_polish(ellipse: EllipseSpec, params: list[float]) -> list[float]:
    """Newton-solve the reflection residuals at vertices 2..n with t1 fixed."""
    import numpy as np

    n = len(params)
    t1 = params[0]

    def residuals(ts: "np.ndarray") -> "np.ndarray":
        full = [t1, *ts.tolist()]
        return np.array(
            [reflection_residual(ellipse, full[i - 1], full[i], full[(i + 1) % n]) for i in range(1, n)]
        )

    ts = np.array(params[1:])
    for _ in range(NEWTON_MAX_ITER):
        res = residuals(ts)
        if np.max(np.abs(res)) < NEWTON_TOL:
            break
        jac = np.empty((n - 1, n - 1))
        for j in range(n - 1):
            bumped = ts.copy()
            bumped[j] += NEWTON_FD_STEP
            jac[:, j] = (residuals(bumped) - res) / NEWTON_FD_STEP
        try:
            ts = ts - np.linalg.solve(jac, res)
        except np.linalg.LinAlgError as exc:
            raise SolverError(f"singular Jacobian in Newton polish: {exc}") from exc
    else:
        raise SolverError(
            f"Newton polish did not reach {NEWTON_TOL:.0e} in {NEWTON_MAX_ITER} iterations"
        )
    return [t1, *ts.tolist()]


def solve_nperiodic(ellipse: EllipseSpec, n: int, t1: float, caustic: CausticSpec | None = None) -> Orbit:
    """Winding-1 N-periodic through ellipse_point(t1), n >= 3.

    A precomputed caustic (from a previous solve at the same ellipse and n)
    may be passed to skip the bisection stage; the caustic of the family does
    not depend on t1.
    """
    if n < 3:
        raise GeometryError(f"need n >= 3, got {n}")
    t1 = t1 % TWO_PI
    if caustic is None:
        caustic = _caustic_for_rotation(ellipse, n, t1)
    params, _ = _chain(ellipse, caustic, t1, n)
    params = [params[0]] + [t % TWO_PI for t in params[1:n]]
    params = _newton_polish(ellipse, params)
    params = [params[0]] + [t % TWO_PI for t in params[1:]]

    # Winding-1 check: parameters strictly increasing from t1, no collapse.
    unrolled = [(t - t1) % TWO_PI for t in params]
    unrolled[0] = 0.0
    for i in range(1, n):
        if unrolled[i] <= unrolled[i - 1] + 1e-9:
            raise SolverError(f"orbit collapsed or lost winding 1 at vertex {i}")

    orbit = _build_orbit(ellipse, params)
    res1 = reflection_residual(ellipse, orbit.params[-1], orbit.params[0], orbit.params[1])
    if abs(res1) > 1e-10:
        raise SolverError(f"closure residual at fixed vertex is {res1:.3e}")
    for p in orbit.vertices:
        if abs(ellipse_residual(ellipse, p)) > 1e-10:
            raise SolverError("solved vertex left the billiard boundary")
    return orbit


def family_caustic(ellipse: EllipseSpec, n: int) -> CausticSpec:
    """Caustic shared by the whole winding-1 N-periodic family of this ellipse."""
    return _caustic_for_rotation(ellipse, n, 0.0)
