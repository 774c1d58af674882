"""HTTP service exposing evaluation, grids, sweeps, and regret audits.

Every response carries the bundle id. Malformed query parameters return
400 with per-field errors; structurally valid queries outside the kick
model's domain return 422.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .bundle import ModelBundle
from .decision import (
    DecisionQuery,
    decision_grid,
    frontier,
    grid_to_json_dict,
    evaluate,
    regret_report,
    sweep_dtouch,
)
from .errors import DomainError
from .lineout import GameContext
from .pitch import PitchPoint


class RegretRowIn(BaseModel):
    team: str
    ep_lineout: float
    ep_kick: float
    chosen: Literal["lineout", "kick"]


class RegretRequest(BaseModel):
    rows: list[RegretRowIn]


def create_app(bundle: ModelBundle) -> FastAPI:
    app = FastAPI(title="ruck-ep", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        errors = [
            {"field": ".".join(str(p) for p in err["loc"] if p != "query"), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"errors": errors, "bundle_id": bundle.bundle_id})

    @app.exception_handler(DomainError)
    async def on_domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=422, content={"error": str(exc), "bundle_id": bundle.bundle_id})

    @app.get("/api/health")
    def health():
        return {"status": "ok", "bundle_id": bundle.bundle_id}

    @app.get("/api/decision")
    def decision(
        x: float = Query(..., ge=0.0, le=100.0),
        y: float = Query(..., ge=-35.0, le=35.0),
        d_touch: float = Query(..., ge=0.0),
        cards: int = Query(0, ge=-3, le=3),
        winpct: float = Query(0.0, ge=-1.0, le=1.0),
    ):
        query = DecisionQuery(PitchPoint(x, y), d_touch, GameContext(cards, winpct))
        result = evaluate(query, bundle.lineout, bundle.surface, bundle.restarts)
        return {"bundle_id": bundle.bundle_id, **result.to_dict()}

    @app.get("/api/grid")
    def grid(
        d_touch: float = Query(..., ge=0.0),
        cards: int = Query(0, ge=-3, le=3),
        winpct: float = Query(0.0, ge=-1.0, le=1.0),
        step: float = Query(1.0, gt=0.0),
    ):
        g = decision_grid(
            bundle.lineout,
            bundle.surface,
            bundle.restarts,
            d_touch=d_touch,
            ctx=GameContext(cards, winpct),
            step=step,
            model_ids=bundle.model_ids(),
        )
        return {"bundle_id": bundle.bundle_id, **grid_to_json_dict(g, frontier(g))}

    @app.get("/api/sweep")
    def sweep(
        x: float = Query(..., ge=0.0, le=100.0),
        y: float = Query(..., ge=-35.0, le=35.0),
        cards: int = Query(0, ge=-3, le=3),
        winpct: float = Query(0.0, ge=-1.0, le=1.0),
        dmax: float = Query(30.0, ge=0.0),
        dstep: float = Query(1.0, gt=0.0),
    ):
        ds = []
        d = 0.0
        while d <= dmax + 1e-9:
            ds.append(round(d, 9))
            d += dstep
        result = sweep_dtouch(
            PitchPoint(x, y),
            GameContext(cards, winpct),
            ds,
            bundle.lineout,
            bundle.surface,
            bundle.restarts,
        )
        return {"bundle_id": bundle.bundle_id, **result.to_dict()}

    @app.post("/api/regret")
    def regret(body: RegretRequest):
        report = regret_report(
            [(r.team, r.ep_lineout, r.ep_kick, r.chosen) for r in body.rows]
        )
        return {"bundle_id": bundle.bundle_id, **report.to_dict()}

    return app


def serve(bundle: ModelBundle, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(bundle), host=host, port=port, log_level="info")
