"""Shared fixtures: independent Euclidean constructions used as oracles for
the trilinear table, plus a few sample triangles."""

from __future__ import annotations

import math

import pytest


def incenter(v):
    (ax, ay), (bx, by), (cx, cy) = v
    a = math.dist(v[1], v[2])
    b = math.dist(v[2], v[0])
    c = math.dist(v[0], v[1])
    s = a + b + c
    return ((a * ax + b * bx + c * cx) / s, (a * ay + b * by + c * cy) / s)


def centroid(v):
    return (sum(p[0] for p in v) / 3.0, sum(p[1] for p in v) / 3.0)


def circumcenter(v):
    (ax, ay), (bx, by), (cx, cy) = v
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return (ux, uy)


def orthocenter(v):
    o = circumcenter(v)
    g = centroid(v)
    return (3.0 * g[0] - 2.0 * o[0], 3.0 * g[1] - 2.0 * o[1])


def ninepoint_center(v):
    o = circumcenter(v)
    h = orthocenter(v)
    return ((o[0] + h[0]) / 2.0, (o[1] + h[1]) / 2.0)


def area(v):
    (ax, ay), (bx, by), (cx, cy) = v
    return abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) / 2.0


def inradius(v):
    a = math.dist(v[1], v[2])
    b = math.dist(v[2], v[0])
    c = math.dist(v[0], v[1])
    return 2.0 * area(v) / (a + b + c)


def circumradius(v):
    a = math.dist(v[1], v[2])
    b = math.dist(v[2], v[0])
    c = math.dist(v[0], v[1])
    return a * b * c / (4.0 * area(v))


def feuerbach_point(v):
    """Touch point of the incircle and the nine-point circle."""
    i = incenter(v)
    n = ninepoint_center(v)
    r_half = circumradius(v) / 2.0
    d = math.dist(i, n)
    return (n[0] + r_half * (i[0] - n[0]) / d, n[1] + r_half * (i[1] - n[1]) / d)


def intouch_triangle(v):
    a = math.dist(v[1], v[2])
    b = math.dist(v[2], v[0])
    c = math.dist(v[0], v[1])
    s = (a + b + c) / 2.0

    def bary(w):
        t = sum(w)
        return (
            (w[0] * v[0][0] + w[1] * v[1][0] + w[2] * v[2][0]) / t,
            (w[0] * v[0][1] + w[1] * v[1][1] + w[2] * v[2][1]) / t,
        )

    return (bary((0.0, s - c, s - b)), bary((s - c, 0.0, s - a)), bary((s - b, s - a, 0.0)))


@pytest.fixture
def scalene():
    return ((0.2, 0.1), (4.3, 0.7), (1.1, 3.9))


@pytest.fixture
def right_345():
    # right angle at the origin vertex; sides 3, 4, 5
    return ((0.0, 0.0), (4.0, 0.0), (0.0, 3.0))
