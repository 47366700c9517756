"""Command-line client for the billiard lab.

Thin client over the HTTP service: every command builds a request model,
dispatches it (in-process by default, or to a remote service via --server),
and renders the JSON response to CSV/JSON/SVG files. Outputs carry no
timestamps; identical configuration yields byte-identical files.

Exit codes: 0 success, 1 check failure, 2 validation error, 3 solver failure.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import httpx
import pydantic

from .geometry import limacon_point, make_ellipse
from .orbits import SolverError
from .service import runs
from .service import schemas as sc
from .service.app import _VALIDATION_ERRORS
from .svgplot import SvgCanvas

ENV_PREFIX = "INVERSIVE_BILLIARDS"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_SOLVER = 3

_ROUTES = {
    "/api/orbit": (sc.OrbitRequest, runs.run_orbit),
    "/api/invariants": (sc.InvariantsRequest, runs.run_invariants),
    "/api/loci": (sc.LociRequest, runs.run_loci),
    "/api/tables": (sc.TablesRequest, runs.run_tables),
}


class ServiceClient:
    """Dispatch requests either in-process or to a remote service URL."""

    def __init__(self, server: str | None = None):
        self.server = server

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        if self.server:
            resp = httpx.post(self.server.rstrip("/") + path, json=payload, timeout=300.0)
            return resp.status_code, resp.json()
        model, fn = _ROUTES[path]
        try:
            req = model(**payload)
        except pydantic.ValidationError as exc:
            return 422, {"detail": str(exc)}
        try:
            return 200, fn(req).model_dump()
        except _VALIDATION_ERRORS as exc:
            return 422, {"detail": str(exc)}
        except SolverError as exc:
            return 500, {"detail": f"solver failure: {exc}"}


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return "" if v is None else str(v)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _finish(status: int, body: dict, out: Path, writers, formats: set[str], json_name: str) -> None:
    """Render outputs and exit with the contract code."""
    if status == 422:
        click.echo(f"validation error: {body.get('detail')}", err=True)
        sys.exit(EXIT_VALIDATION)
    if status != 200:
        click.echo(f"error ({status}): {body.get('detail')}", err=True)
        sys.exit(EXIT_SOLVER)
    out.mkdir(parents=True, exist_ok=True)
    if "json" in formats:
        _write_json(out / json_name, body)
    for fmt, writer in writers.items():
        if fmt in formats:
            writer(body)
    failed = [c for c in body.get("checks", []) if c.get("passed") is False]
    for c in body.get("checks", []):
        mark = {True: "PASS", False: "FAIL", None: "info"}[c.get("passed")]
        click.echo(f"[{mark}] {c['name']}" + (f": {c['detail']}" if c.get("detail") else ""))
    if failed:
        sys.exit(EXIT_CHECK_FAILED)


def _parse_formats(value: str) -> set[str]:
    formats = {f.strip() for f in value.split(",") if f.strip()}
    bad = formats - {"csv", "json", "svg"}
    if bad:
        raise click.BadParameter(f"unknown formats {sorted(bad)}; choose from csv, json, svg")
    return formats


@click.group()
@click.option("--server", default=None, envvar=f"{ENV_PREFIX}_SERVER",
              help="Base URL of a running service; omit to compute in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Elliptic billiard N-periodics, inversive families, invariants, and loci."""
    ctx.obj = ServiceClient(server)


def _common(fn):
    fn = click.option("--out", type=click.Path(path_type=Path), default=Path("out"),
                      show_default=True, help="Output directory.")(fn)
    fn = click.option("--formats", default="csv,json,svg", show_default=True,
                      help="Comma-separated subset of csv,json,svg.")(fn)
    return fn


@main.command()
@click.option("--a", "a", type=float, default=1.5, show_default=True)
@click.option("--b", "b", type=float, default=1.0, show_default=True)
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--t1", type=float, default=0.1, show_default=True)
@_common
@click.pass_obj
def orbit(client: ServiceClient, a: float, b: float, n: int, t1: float, out: Path, formats: str) -> None:
    """Solve one N-periodic orbit; write vertices, J, L, caustic, and an SVG."""
    fmts = _parse_formats(formats)
    status, body = client.post("/api/orbit", {"a": a, "b": b, "n": n, "t1": t1})

    def write_csv(body: dict) -> None:
        res = body["results"]
        rows = [
            [i, res["params"][i], v[0], v[1]]
            for i, v in enumerate(res["vertices"])
        ]
        _write_csv(out / "orbit.csv", ["index", "t", "x", "y"], rows)
        _write_csv(
            out / "orbit_summary.csv",
            ["a", "b", "n", "j", "l", "caustic_a2", "caustic_b2"],
            [[a, b, n, res["j"], res["length"], res["caustic"]["a2"], res["caustic"]["b2"]]],
        )

    def write_svg(body: dict) -> None:
        res = body["results"]
        canvas = SvgCanvas(half_width=a * 1.15)
        canvas.ellipse(0, 0, a, b, "#1f77b4")
        canvas.ellipse(0, 0, res["caustic"]["a2"], res["caustic"]["b2"], "#8c564b", dashed=True)
        canvas.polyline([tuple(v) for v in res["vertices"]], "#222222", width=1.5, closed=True)
        for v in res["vertices"]:
            canvas.dot(v[0], v[1], "#d62728")
        (out / "orbit.svg").write_text(canvas.render())

    _finish(status, body, out, {"csv": write_csv, "svg": write_svg}, fmts, "orbit.json")


@main.command()
@click.option("--a", "a", type=float, default=1.5, show_default=True)
@click.option("--b", "b", type=float, default=1.0, show_default=True)
@click.option("--rho", type=float, default=1.0, show_default=True)
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--grid", type=int, default=256, show_default=True)
@click.option("--focus", "focus_index", type=int, default=1, show_default=True)
@click.option("--tol-invariant", type=float, default=1e-9, show_default=True,
              envvar=f"{ENV_PREFIX}_TOL_INVARIANT")
@click.option("--tol-conjecture", type=float, default=1e-6, show_default=True,
              envvar=f"{ENV_PREFIX}_TOL_CONJECTURE")
@_common
@click.pass_obj
def invariants(client, a, b, rho, n, grid, focus_index, tol_invariant, tol_conjecture, out, formats):
    """Sweep the inversive family and compare each invariant to its closed form."""
    fmts = _parse_formats(formats)
    status, body = client.post(
        "/api/invariants",
        {
            "a": a, "b": b, "rho": rho, "n": n, "grid": grid,
            "focus_index": focus_index,
            "tol_invariant": tol_invariant, "tol_conjecture": tol_conjecture,
        },
    )

    def write_csv(body: dict) -> None:
        rows = [
            [
                t["name"], t["mean"], t["std"], t["rel_std"], t["max_abs_dev"],
                t["closed_form"], t["rel_error"],
                "conjecture: no closed form" if t["conjecture"] else "",
            ]
            for t in body["results"]
        ]
        _write_csv(
            out / "invariants.csv",
            ["name", "mean", "std", "rel_std", "max_abs_dev", "closed_form", "rel_error", "note"],
            rows,
        )

    _finish(status, body, out, {"csv": write_csv}, fmts, "invariants.json")


@main.command()
@click.option("--a", "a", type=float, default=1.5, show_default=True)
@click.option("--b", "b", type=float, default=1.0, show_default=True)
@click.option("--rho", type=float, default=1.0, show_default=True)
@click.option("--ids", default="1,2,3,4,5", show_default=True,
              help="Comma-separated Kimberling indices.")
@click.option("--family", type=click.Choice(["billiard", "focus-inversive", "center-inversive"]),
              default="focus-inversive", show_default=True)
@click.option("--grid", type=int, default=256, show_default=True)
@click.option("--tol-circle", type=float, default=1e-6, show_default=True,
              envvar=f"{ENV_PREFIX}_TOL_CIRCLE")
@click.option("--tol-conic", type=float, default=1e-6, show_default=True,
              envvar=f"{ENV_PREFIX}_TOL_CONIC")
@_common
@click.pass_obj
def loci(client, a, b, rho, ids, family, grid, tol_circle, tol_conic, out, formats):
    """Sweep triangle-center loci, classify them, and compare to closed forms."""
    fmts = _parse_formats(formats)
    try:
        id_list = [int(s) for s in ids.split(",") if s.strip()]
    except ValueError as exc:
        click.echo(f"validation error: bad --ids list: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    status, body = client.post(
        "/api/loci",
        {
            "a": a, "b": b, "rho": rho, "ids": id_list, "family": family,
            "grid": grid, "tol_circle": tol_circle, "tol_conic": tol_conic,
            "include_points": True,
        },
    )

    def write_csv(body: dict) -> None:
        summary = []
        points = []
        for r in body["results"]:
            circ = r.get("circle") or {}
            ref = r.get("reference") or {}
            summary.append([
                r["center_id"], r["family"], r["verdict"], r.get("expected"),
                r["diameter"], circ.get("cx"), circ.get("cy"), circ.get("radius"), circ.get("rms"),
                ref.get("cx"), ref.get("radius"), ref.get("branch"),
            ])
            for i, p in enumerate(r["points"]):
                points.append([r["center_id"], r["family"], i, p[0], p[1]])
        _write_csv(
            out / "loci_summary.csv",
            ["center_id", "family", "verdict", "expected", "diameter",
             "fit_cx", "fit_cy", "fit_radius", "fit_rms", "ref_cx", "ref_radius", "branch"],
            summary,
        )
        _write_csv(out / "loci_points.csv", ["center_id", "family", "index", "x", "y"], points)

    def write_svg(body: dict) -> None:
        palette = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
                   "#e377c2", "#8c564b", "#bcbd22", "#7f7f7f", "#1a55a3"]
        ellipse = make_ellipse(a, b)
        pts_all = [p for r in body["results"] for p in r["points"]]
        extent = max(
            [a] + [abs(p[0]) for p in pts_all] + [abs(p[1]) for p in pts_all]
        )
        canvas = SvgCanvas(half_width=extent * 1.15)
        canvas.ellipse(0, 0, a, b, "#1f77b4")
        if family == "focus-inversive":
            lim = [limacon_point(ellipse, rho, 2 * math.pi * i / 256) for i in range(257)]
            canvas.polyline(lim, "#2ca02c", width=1.0, dashed=True)
        for i, r in enumerate(body["results"]):
            color = palette[i % len(palette)]
            if r["verdict"] == "point":
                p = r["points"][0]
                canvas.dot(p[0], p[1], color, r_px=3.5)
            else:
                canvas.polyline([tuple(p) for p in r["points"]], color, width=1.2, closed=True)
        (out / "loci.svg").write_text(canvas.render())

    _finish(status, body, out, {"csv": write_csv, "svg": write_svg}, fmts, "loci.json")


@main.command()
@click.option("--n-max", type=int, default=8, show_default=True)
@_common
@click.pass_obj
def tables(client, n_max, out, formats):
    """Regenerate the J/L reference grid and diff it against the fixtures."""
    fmts = _parse_formats(formats)
    status, body = client.post("/api/tables", {"n_max": n_max})

    def write_csv(body: dict) -> None:
        cells = body["results"]
        aspects = sorted({c["aspect"] for c in cells})
        ns = sorted({c["n"] for c in cells})
        rows = []
        for aspect in aspects:
            per_n = {c["n"]: c for c in cells if c["aspect"] == aspect}
            rows.append([aspect, "J"] + [per_n[n]["j"] for n in ns])
            rows.append([aspect, "L"] + [per_n[n]["length"] for n in ns])
            rows.append([aspect, "JL"] + [per_n[n]["jl"] for n in ns])
        _write_csv(out / "tables.csv", ["a_over_b", "quantity"] + [f"N{n}" for n in ns], rows)
        diff = [
            [c["aspect"], c["n"], c["j"], c["j_ref"], c["j"] - c["j_ref"],
             c["length"], c["length_ref"], c["length"] - c["length_ref"], c["ok"]]
            for c in cells
        ]
        _write_csv(
            out / "tables_diff.csv",
            ["a_over_b", "n", "j", "j_ref", "dj", "l", "l_ref", "dl", "ok"],
            diff,
        )

    _finish(status, body, out, {"csv": write_csv}, fmts, "tables.json")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
