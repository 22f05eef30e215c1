"""HTTP surface for the engine: one endpoint per command.

Run with ``uvicorn qumbra.api:app``.  Request validation errors surface as
422 responses; internal consistency failures (series/recurrence spot-check
mismatches) as 500.
"""

from __future__ import annotations

from fastapi import FastAPI

from . import service

app = FastAPI(
    title="qumbra",
    description="q-umbral calculus engine: q-special functions, operator "
    "identities and q-heat symmetry data as CSV-friendly tables.",
    version="0.1.0",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/eval", response_model=service.EvalResponse)
def eval_endpoint(req: service.EvalRequest) -> service.EvalResponse:
    return service.run_eval(req)


@app.post("/firstzero", response_model=service.FirstZeroResponse)
def firstzero_endpoint(req: service.FirstZeroRequest) -> service.FirstZeroResponse:
    return service.run_firstzero(req)


@app.post("/heat", response_model=service.HeatResponse)
def heat_endpoint(req: service.HeatRequest) -> service.HeatResponse:
    return service.run_heat(req)


@app.post("/hermite", response_model=service.HermiteResponse)
def hermite_endpoint(req: service.HermiteRequest) -> service.HermiteResponse:
    return service.run_hermite(req)


@app.post("/verify", response_model=service.VerifyResponse)
def verify_endpoint(req: service.VerifyRequest) -> service.VerifyResponse:
    return service.run_verify(req)
