"""HTTP facade over the engine: vocabulary, baseline, check and simulate.

Stateless by design: baselines and the vocabulary are immutable after
startup, each request gets an isolated engine run, and user scenarios are
never persisted server-side. The access log records method, path, status and
duration only; request bodies (lever scripts!) and result values must never
reach the log.
"""

from __future__ import annotations

import logging
import time

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ._version import __version__
from .dsl import LexError, ParseError, check, parse_program
from .engine import (
    EngineConfig,
    ScenarioCheckError,
    ScriptRuntimeError,
    YearRangeError,
    headline_metrics,
    run_scenario,
)
from .projection import ProjectionSeries
from .scenario import MAX_SCRIPT_BYTES, ScenarioError, scenario_from_dict

log = logging.getLogger("policy_lab.service")


class CheckRequest(BaseModel):
    script: str
    inputs: list[str] | None = None


class SimulateRequest(BaseModel):
    scenario: dict
    baseline_id: str = "default"
    include_diagnostics: bool = False


class _ViolationOut(BaseModel):
    code: str
    message: str
    line: int
    column: int


def _cells_of(series: ProjectionSeries) -> list[dict]:
    """Long-form records in canonical (region, year, attribute) order."""
    return [
        {
            "year": year,
            "region": region,
            "variable": attr,
            "value": series.values[(region, year, attr)],
        }
        for region in series.vocabulary.region_ids
        for year in series.years
        for attr in series.vocabulary.attribute_ids
    ]


def create_app(
    baselines: dict[str, ProjectionSeries],
    static_dir: str | None = None,
    engine_config: EngineConfig | None = None,
) -> FastAPI:
    """Build the service around immutable, pre-loaded baselines.

    All baselines must share one vocabulary (the first one's is served).
    """
    if not baselines:
        raise ValueError("at least one baseline is required")
    vocabulary = next(iter(baselines.values())).vocabulary
    config = engine_config or EngineConfig()

    app = FastAPI(title="policy-lab", version=__version__, docs_url=None, redoc_url=None)

    @app.middleware("http")
    async def access_log(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        log.info(
            "%s %s %d %.1fms",
            request.method,
            request.url.path,
            response.status_code,
            elapsed_ms,
        )
        return response

    @app.get("/health")
    def health():
        return {"status": "ok", "engine_version": __version__}

    @app.get("/api/vocabulary")
    def get_vocabulary():
        return {
            "regions": [
                {"id": r.id, "display_name": r.display_name} for r in vocabulary.regions
            ],
            "attributes": [
                {"id": a.id, "kind": a.kind, "unit": a.unit, "group": a.group}
                for a in vocabulary.attributes
            ],
            "lifetimes": vocabulary.lifetimes,
        }

    @app.get("/api/baseline")
    def get_baseline(id: str = "default"):
        series = baselines.get(id)
        if series is None:
            return JSONResponse(
                status_code=404, content={"detail": f"unknown baseline {id!r}"}
            )
        return {
            "baseline_id": id,
            "years": [series.first_year, series.last_year],
            "cells": _cells_of(series),
        }

    @app.post("/api/check")
    def post_check(body: CheckRequest):
        """Static validation; mere script violations are a 200, never a 4xx."""
        if len(body.script.encode("utf-8")) > MAX_SCRIPT_BYTES:
            return JSONResponse(
                status_code=400,
                content={"detail": f"script exceeds {MAX_SCRIPT_BYTES} bytes"},
            )
        try:
            program = parse_program(body.script)
        except (LexError, ParseError) as exc:
            return {
                "violations": [
                    _ViolationOut(
                        code=type(exc).__name__,
                        message=str(exc),
                        line=exc.span.line,
                        column=exc.span.column,
                    ).model_dump()
                ]
            }
        inputs = set(body.inputs) if body.inputs is not None else None
        violations = check(program, vocabulary, inputs=inputs)
        return {
            "violations": [
                _ViolationOut(
                    code=v.code,
                    message=v.message,
                    line=v.span.line,
                    column=v.span.column,
                ).model_dump()
                for v in violations
            ]
        }

    @app.post("/api/simulate")
    def post_simulate(body: SimulateRequest):
        baseline = baselines.get(body.baseline_id)
        if baseline is None:
            return JSONResponse(
                status_code=404,
                content={"detail": f"unknown baseline {body.baseline_id!r}"},
            )
        try:
            scenario = scenario_from_dict(body.scenario)
        except (ScenarioError, LexError, ParseError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        try:
            result = run_scenario(baseline, scenario, config)
        except (ScenarioCheckError, YearRangeError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        except ScriptRuntimeError as exc:
            return JSONResponse(
                status_code=422,
                content={
                    "detail": str(exc),
                    "lever_id": exc.lever_id,
                    "year": exc.year,
                    "line": exc.span.line,
                    "column": exc.span.column,
                },
            )
        headline = headline_metrics(result)
        response = {
            "engine_version": result.engine_version,
            "baseline_id": body.baseline_id,
            "years": [result.series.first_year, result.series.last_year],
            "run_years": [result.run_first_year, result.run_last_year],
            "cells": _cells_of(result.series),
            "headline": {
                "cumulative_global_mismanaged": headline.cumulative_global_mismanaged,
                "end_year_fates": headline.end_year_fates,
            },
        }
        if body.include_diagnostics:
            response_diag = []
            for year_diag in result.diagnostics:
                response_diag.append(
                    {
                        "year": year_diag.year,
                        "clamps_applied": [
                            {
                                "address": c.address,
                                "line": c.span.line,
                                "column": c.span.column,
                                "pre_value": c.pre_value,
                                "post_value": c.post_value,
                            }
                            for c in year_diag.script.clamps_applied
                        ],
                        "divisions_guarded": year_diag.script.divisions_guarded,
                        "normalization": [
                            {
                                "region": n.region,
                                "scale": n.scale,
                                "mismanaged_default": n.mismanaged_default,
                            }
                            for n in year_diag.normalization
                        ],
                    }
                )
            response["diagnostics"] = response_diag
        return response

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
