"""FastAPI front end over the coloring handlers."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..coloring import BudgetExceeded
from ..knotio import KnotFormatError
from . import handlers
from .schemas import (BenchRequest, BenchResponse, CertifyRequest,
                      CertifyResponse, ColorRequest, ColorResponse,
                      DistinguishRequest, DistinguishResponse, EncodeRequest,
                      EncodeResponse)

app = FastAPI(title="knotcol", version="0.1.0",
              description="Quandle colorings of knot diagrams: decision, "
                          "counting, SAT encodings, and knottedness certificates.")


def _wrap(fn, req):
    try:
        return fn(req)
    except (KnotFormatError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except BudgetExceeded as exc:
        raise HTTPException(status_code=429, detail=str(exc)) from exc


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/color", response_model=ColorResponse)
def color(req: ColorRequest):
    return _wrap(handlers.handle_color, req)


@app.post("/encode", response_model=EncodeResponse)
def encode(req: EncodeRequest):
    return _wrap(handlers.handle_encode, req)


@app.post("/certify", response_model=CertifyResponse)
def certify(req: CertifyRequest):
    return _wrap(handlers.handle_certify, req)


@app.post("/distinguish", response_model=DistinguishResponse)
def distinguish(req: DistinguishRequest):
    return _wrap(handlers.handle_distinguish, req)


@app.post("/bench", response_model=BenchResponse)
def bench(req: BenchRequest):
    return _wrap(handlers.handle_bench, req)
