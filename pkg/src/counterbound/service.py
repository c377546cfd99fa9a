"""HTTP JSON API mirroring the command line.

Every endpoint is a POST that accepts the same document schemas the CLI
reads from files and returns the same payload the CLI would print, so
the two interfaces stay in byte parity (modulo whitespace). The service
is stateless: no sessions, no persistence, safe under concurrency
because all computation is pure.

Domain errors become ``400 {"error": <code>, "message": ...}`` where
``<code>`` matches the error name the CLI prints before exiting.
"""

from __future__ import annotations

from typing import Mapping, Optional

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import __version__, reports
from .model import (
    CounterboundError,
    ObservedJoint,
    ProxyJoint,
    SchemaError,
    SensitivityParams,
)
from .proxy import DEFAULT_TIE_TOLERANCE

# Guards the service against accidental giant allocations; the CLI has
# no such cap.
MAX_SERVICE_REPLICATES = 2_000_000


def _checked(payload, allowed: frozenset[str], required: frozenset[str],
             name: str) -> Mapping:
    if not isinstance(payload, Mapping):
        raise SchemaError(f"{name} body must be a JSON object")
    unknown = sorted(set(payload) - allowed)
    if unknown:
        raise SchemaError(f"{name} body has unknown field(s): "
                          f"{', '.join(unknown)}")
    missing = sorted(required - set(payload))
    if missing:
        raise SchemaError(f"{name} body is missing field(s): "
                          f"{', '.join(missing)}")
    return payload


def _as_int(value, field: str) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{field} must be an integer") from exc
    if isinstance(value, float) and value != out:
        raise SchemaError(f"{field} must be an integer, got {value}")
    return out


def _as_float(value, field: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{field} must be a number") from exc


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="counterbound", version=__version__)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(CounterboundError)
    async def _domain_error(request: Request, exc: CounterboundError):
        return JSONResponse(status_code=400,
                            content={"error": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _body_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "SchemaError",
                     "message": "request body must be a JSON object"})

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/api/bounds")
    def api_bounds(payload: dict = Body(...)) -> dict:
        body = _checked(payload, frozenset({"obs", "params", "target"}),
                        frozenset({"obs"}), "/api/bounds")
        obs = ObservedJoint.from_dict(body["obs"])
        params = body.get("params")
        if params is not None:
            params = SensitivityParams.from_dict(params)
        target = body.get("target", "both")
        if not isinstance(target, str):
            raise SchemaError("target must be a string")
        return reports.bounds_report(obs, params, target=target)

    @app.post("/api/proxy")
    def api_proxy(payload: dict = Body(...)) -> dict:
        body = _checked(payload, frozenset({"joint", "tie_tolerance"}),
                        frozenset({"joint"}), "/api/proxy")
        joint = ProxyJoint.from_dict(body["joint"])
        tie = _as_float(body.get("tie_tolerance", DEFAULT_TIE_TOLERANCE),
                        "tie_tolerance")
        return reports.proxy_report(joint, tie_tolerance=tie)

    @app.post("/api/sweep")
    def api_sweep(payload: dict = Body(...)):
        body = _checked(
            payload,
            frozenset({"obs", "target", "side", "axis1", "axis2", "fixed",
                       "resolution", "format"}),
            frozenset({"obs", "target", "side", "axis1", "axis2"}),
            "/api/sweep")
        obs = ObservedJoint.from_dict(body["obs"])
        fixed = body.get("fixed") or {}
        if not isinstance(fixed, Mapping):
            raise SchemaError("fixed must be an object of name: value pairs")
        fixed = {str(name): _as_float(value, f"fixed[{name}]")
                 for name, value in fixed.items()}
        result = reports.sweep_report(
            obs, target=body["target"], side=body["side"],
            axis1=body["axis1"], axis2=body["axis2"], fixed=fixed,
            resolution=_as_int(body.get("resolution", 101), "resolution"))
        fmt = body.get("format", "json")
        if fmt == "csv":
            return PlainTextResponse(result.to_csv(), media_type="text/csv")
        if fmt != "json":
            raise SchemaError(f"format must be 'json' or 'csv', got {fmt!r}")
        return result.to_json()

    @app.post("/api/social")
    def api_social(payload: dict = Body(...)) -> dict:
        body = _checked(payload,
                        frozenset({"benefit", "harm", "ate", "weights"}),
                        frozenset({"benefit", "harm", "weights"}),
                        "/api/social")
        benefit = reports.interval_from_json(body["benefit"], "benefit")
        harm = reports.interval_from_json(body["harm"], "harm")
        ate = body.get("ate")
        if ate is not None:
            ate = reports.interval_from_json(ate, "ate", kind="signed")
        weights = reports.weights_from_json(body["weights"])
        return reports.social_report(benefit, harm, ate, weights)

    @app.post("/api/simulate")
    def api_simulate(payload: dict = Body(...)) -> dict:
        body = _checked(payload, frozenset({"n", "seed"}),
                        frozenset({"n"}), "/api/simulate")
        n = _as_int(body["n"], "n")
        if n > MAX_SERVICE_REPLICATES:
            raise SchemaError(
                f"n exceeds the service cap of {MAX_SERVICE_REPLICATES}; "
                f"use the command line for larger runs")
        seed = _as_int(body.get("seed", 0), "seed")
        return reports.simulate_report(n, seed=seed).to_json()

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="static")
    return app
