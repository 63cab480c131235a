"""HTTP facade: every experiment driver behind a typed POST endpoint.

The service owns no logic; it validates request bodies into the config
models, runs the matching driver, and returns the record.  Domain errors
map onto status codes the CLI translates into exit codes: parameter
problems (including scale and decode refusals) become 400, generation and
numeric failures become 500 with the error class named in the body.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .errors import GenerationError, NumericError, ParameterError
from .experiments import (
    run_codec,
    run_count,
    run_friedman,
    run_gen,
    run_lowerbound,
    run_rigidity_scan,
    run_witness,
)
from .records import (
    CodecConfig,
    CodecRecord,
    CountConfig,
    CountRecord,
    FriedmanConfig,
    FriedmanRecord,
    GenConfig,
    GenResponse,
    LowerBoundConfig,
    LowerBoundRecord,
    RigidityScanConfig,
    RigidityScanRecord,
    WitnessConfig,
    WitnessRecord,
)

app = FastAPI(title="rigidkit", version=__version__)


def _error_body(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "detail": str(exc)}


@app.exception_handler(ParameterError)
async def _parameter_error(request: Request, exc: ParameterError) -> JSONResponse:
    return JSONResponse(status_code=400, content=_error_body(exc))


@app.exception_handler(GenerationError)
async def _generation_error(request: Request, exc: GenerationError) -> JSONResponse:
    return JSONResponse(status_code=500, content=_error_body(exc))


@app.exception_handler(NumericError)
async def _numeric_error(request: Request, exc: NumericError) -> JSONResponse:
    return JSONResponse(status_code=500, content=_error_body(exc))


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/v1/gen", response_model=GenResponse)
def gen(config: GenConfig) -> GenResponse:
    return run_gen(config)


@app.post("/v1/rigidity-scan", response_model=RigidityScanRecord)
def rigidity_scan(config: RigidityScanConfig) -> RigidityScanRecord:
    return run_rigidity_scan(config)


@app.post("/v1/witness", response_model=WitnessRecord)
def witness(config: WitnessConfig) -> WitnessRecord:
    return run_witness(config)


@app.post("/v1/friedman", response_model=FriedmanRecord)
def friedman(config: FriedmanConfig) -> FriedmanRecord:
    return run_friedman(config)


@app.post("/v1/codec", response_model=CodecRecord)
def codec(config: CodecConfig) -> CodecRecord:
    return run_codec(config)


@app.post("/v1/count", response_model=CountRecord)
def count(config: CountConfig) -> CountRecord:
    return run_count(config)


@app.post("/v1/lowerbound", response_model=LowerBoundRecord)
def lowerbound(config: LowerBoundConfig) -> LowerBoundRecord:
    return run_lowerbound(config)
