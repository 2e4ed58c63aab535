from typing import Any, Dict

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from starlette.responses import JSONResponse

from data_models.models import (
    AnalyzeRequest,
    FromMuRequest,
    FromMuResponse,
    report_to_model,
    request_to_theta_datum,
    theta_datum_to_model,
    weight_from_input,
)
from core.weights import Signature
from exception.exceptions import CustomException, DatumValidationError, GuardExceededError, ParseError
from logger.custom_logger import logger
from screening.screen import screen
from theta.theta_datum import theta_datum_from_mu
from utils.config_loader import load_config

app = FastAPI(title="upq-screen")

app.add_middleware(
    CORSMiddleware,
    allow_origins=load_config().get("api", {}).get("cors_origins", ["*"]),
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _error_response(e: Exception) -> JSONResponse:
    logger.error(str(e))
    if isinstance(e, (DatumValidationError, ParseError)):
        status = 422
    elif isinstance(e, GuardExceededError):
        status = 400
    else:
        status = 500
    content = e.to_dict() if isinstance(e, CustomException) else {"error": "internal", "message": str(e)}
    return JSONResponse(status_code=status, content=content)


@app.get("/health")
async def health() -> Dict[str, str]:
    return {"status": "ok"}


@app.post("/analyze")
async def analyze(request: AnalyzeRequest) -> Dict[str, Any]:
    """
    Endpoint to screen a theta-stable datum.

    Parameters
    ----------
    request : AnalyzeRequest
        Either a full datum or a signature, lowest K-type and nu vectors.

    Returns
    -------
    dict
        The screening report, or error details.
    """
    try:
        td = request_to_theta_datum(request)
        return report_to_model(screen(td)).model_dump(mode="json")
    except Exception as e:
        return _error_response(e)


@app.post("/from-mu")
async def from_mu(request: FromMuRequest) -> Dict[str, Any]:
    """
    Endpoint to derive the datum of a lowest K-type and screen it.

    Returns
    -------
    dict
        ``{"datum": ..., "report": ...}``, or error details.
    """
    try:
        td = theta_datum_from_mu(weight_from_input(request.mu), Signature(request.p, request.q), request.nu)
        response = FromMuResponse(datum=theta_datum_to_model(td), report=report_to_model(screen(td)))
        return response.model_dump(mode="json")
    except Exception as e:
        return _error_response(e)
