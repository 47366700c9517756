"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

Family = Literal["billiard", "focus-inversive", "center-inversive"]


class EllipseParams(BaseModel):
    a: float = Field(1.5, gt=0.0, description="major semiaxis")
    b: float = Field(1.0, gt=0.0, description="minor semiaxis")

    @model_validator(mode="after")
    def _check_order(self):
        if self.a < self.b:
            raise ValueError(f"major semiaxis must satisfy a >= b, got a={self.a}, b={self.b}")
        return self


class OrbitRequest(EllipseParams):
    n: int = Field(3, ge=3, le=64)
    t1: float = 0.1


class InvariantsRequest(EllipseParams):
    rho: float = Field(1.0, gt=0.0)
    n: int = Field(3, ge=3, le=24)
    grid: int = Field(256, ge=16)
    focus_index: int = Field(1, ge=1, le=2)
    tol_invariant: float = Field(1e-9, gt=0.0)
    tol_conjecture: float = Field(1e-6, gt=0.0)


class LociRequest(EllipseParams):
    rho: float = Field(1.0, gt=0.0)
    ids: list[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5])
    family: Family = "focus-inversive"
    grid: int = Field(256, ge=32)
    tol_circle: float = Field(1e-6, gt=0.0)
    tol_conic: float = Field(1e-6, gt=0.0)
    include_points: bool = True


class TablesRequest(BaseModel):
    n_max: int = Field(8, ge=3, le=12)


class Check(BaseModel):
    name: str
    passed: Optional[bool] = None  # None: informational, no claim
    value: Optional[float] = None
    reference: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""


class CausticOut(BaseModel):
    a2: float
    b2: float


class OrbitResult(BaseModel):
    params: list[float]
    vertices: list[tuple[float, float]]
    j: float
    j_spread: float
    length: float
    caustic: CausticOut
    closed_form_j: Optional[float] = None
    closed_form_l: Optional[float] = None


class OrbitResponse(BaseModel):
    config: OrbitRequest
    results: OrbitResult
    checks: list[Check]


class TraceOut(BaseModel):
    name: str
    mean: float
    std: float
    rel_std: float
    max_abs_dev: float
    closed_form: Optional[float] = None
    rel_error: Optional[float] = None
    conjecture: bool = False


class RotatingBilliardOut(BaseModel):
    per_vertex_j_spread: float
    across_family_j_spread: float
    frame_j_mean: float
    semi_major_rel_spread: float
    semi_minor_rel_spread: float
    center_circle_rms: float
    center_circle_radius: float
    center_circle_center: tuple[float, float]
    radius_ref: float
    radius_rel_error: float


class InvariantsResponse(BaseModel):
    config: InvariantsRequest
    results: list[TraceOut]
    rotating_billiard: Optional[RotatingBilliardOut] = None
    checks: list[Check]


class CircleFitOut(BaseModel):
    cx: float
    cy: float
    radius: float
    rms: float


class ConicFitOut(BaseModel):
    coefficients: list[float]
    kind: str
    rms: float
    center: Optional[tuple[float, float]] = None
    semi_axes: Optional[tuple[float, float]] = None
    angle: Optional[float] = None


class ReferenceMatchOut(BaseModel):
    cx: float
    cy: float
    radius: float
    branch: str
    center_error: float
    radius_error: float


class LocusResult(BaseModel):
    center_id: int
    family: Family
    verdict: str
    expected: Optional[str] = None
    diameter: float
    circle: Optional[CircleFitOut] = None
    conic: Optional[ConicFitOut] = None
    reference: Optional[ReferenceMatchOut] = None
    points: list[tuple[float, float]] = Field(default_factory=list)


class LociResponse(BaseModel):
    config: LociRequest
    results: list[LocusResult]
    checks: list[Check]
    notes: list[str] = Field(default_factory=list)


class TableCellOut(BaseModel):
    aspect: float
    n: int
    j: float
    length: float
    jl: float
    j_ref: float
    length_ref: float
    ok: bool


class TablesResponse(BaseModel):
    config: TablesRequest
    results: list[TableCellOut]
    checks: list[Check]
