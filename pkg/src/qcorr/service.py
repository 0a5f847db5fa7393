"""HTTP front end: a thin FastAPI wrapper over the analysis layer.

Run with: uvicorn qcorr.service:app

Every numeric capability of the package is exposed as a POST endpoint
taking and returning the pydantic models from :mod:`qcorr.schemas`.
Domain errors surface as HTTP 400 with a structured body instead of 500s.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .analysis import (
    analyze_state,
    batch_run,
    channel_pair_report,
    resolve_options,
    run_reproduction,
    sigma_family_state,
    state_entries,
)
from .channels import KrausChannel, builtin_channel, kraus
from .errors import QcorrError
from .fileio import parse_matrix_entries
from .schemas import (
    AnalysisReport,
    AnalyzeRequest,
    BatchRequest,
    BatchResponse,
    ChannelRequest,
    ChannelResponse,
    ChannelSpecModel,
    DeltaModel,
    ReproduceResponse,
    SigmaFamilyRequest,
    SigmaFamilyResponse,
)
from .states import validate_density

app = FastAPI(title="qcorr", version=__version__)


@app.exception_handler(QcorrError)
async def _domain_error(_request: Request, exc: QcorrError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


def _channel_from_model(model: ChannelSpecModel) -> KrausChannel:
    if model.builtin is not None:
        return builtin_channel(model.builtin, model.param)
    return kraus(*[parse_matrix_entries(op, 2) for op in model.kraus])


@app.get("/health")
async def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=AnalysisReport)
async def analyze(req: AnalyzeRequest) -> AnalysisReport:
    side, tol, settings = resolve_options(req.options)
    rho = validate_density(parse_matrix_entries(req.state), tol)
    return analyze_state(rho, side, tol, settings)


@app.post("/channel", response_model=ChannelResponse)
async def channel(req: ChannelRequest) -> ChannelResponse:
    side, tol, settings = resolve_options(req.options)
    rho = validate_density(parse_matrix_entries(req.state), tol)
    chan_a = _channel_from_model(req.channel_a)
    chan_b = _channel_from_model(req.channel_b)
    out, before, after, delta, cptp_a, cptp_b = channel_pair_report(
        rho, chan_a, chan_b, side, tol, settings
    )
    return ChannelResponse(
        output_state=state_entries(out),
        before=before,
        after=after,
        delta=DeltaModel(**delta.model_dump()),
        cptp_a=cptp_a,
        cptp_b=cptp_b,
    )


@app.post("/sigma-family", response_model=SigmaFamilyResponse)
async def sigma_family(req: SigmaFamilyRequest) -> SigmaFamilyResponse:
    side, tol, settings = resolve_options(req.options)
    rho = sigma_family_state(req.diag, req.c, tol)
    return SigmaFamilyResponse(
        state=state_entries(rho),
        report=analyze_state(rho, side, tol, settings),
    )


@app.post("/batch", response_model=BatchResponse)
async def batch(req: BatchRequest) -> BatchResponse:
    side, tol, settings = resolve_options(req.options)
    chan = None if req.channel is None else _channel_from_model(req.channel)
    return batch_run(req.seed, req.count, req.rank, chan, side, tol, settings)


@app.post("/reproduce", response_model=ReproduceResponse)
async def reproduce(body: dict | None = None) -> ReproduceResponse:
    body = body or {}
    only = body.get("only")
    tol = body.get("tol")
    return run_reproduction(only=only, tol_override=tol)
