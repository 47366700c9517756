"""FastAPI application exposing the billiard lab over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..geometry import GeometryError
from ..orbits import OrbitError, SolverError
from ..centers import CenterError
from ..loci import FitError
from . import runs
from . import schemas as sc

app = FastAPI(
    title="inversive-billiards",
    description=(
        "Elliptic-billiard N-periodic families, their focus- and center-inversive "
        "polygons, invariant measurements, and triangle-center loci."
    ),
    version="0.1.0",
)

_VALIDATION_ERRORS = (GeometryError, CenterError, FitError, OrbitError, ValueError)


def _run(fn, req):
    try:
        return fn(req)
    except _VALIDATION_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except SolverError as exc:
        raise HTTPException(status_code=500, detail=f"solver failure: {exc}") from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/api/orbit", response_model=sc.OrbitResponse)
def orbit(req: sc.OrbitRequest) -> sc.OrbitResponse:
    return _run(runs.run_orbit, req)


@app.post("/api/invariants", response_model=sc.InvariantsResponse)
def invariants(req: sc.InvariantsRequest) -> sc.InvariantsResponse:
    return _run(runs.run_invariants, req)


@app.post("/api/loci", response_model=sc.LociResponse)
def loci(req: sc.LociRequest) -> sc.LociResponse:
    return _run(runs.run_loci, req)


@app.post("/api/tables", response_model=sc.TablesResponse)
def tables(req: sc.TablesRequest) -> sc.TablesResponse:
    return _run(runs.run_tables, req)
