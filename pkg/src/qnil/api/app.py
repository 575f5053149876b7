"""FastAPI wiring.

Every response carries the same envelope:

    {"schema": "qnil/1", "ok": <bool>, "report": {...}}

and errors map onto status codes the CLI turns into exit codes:
422 for usage problems (bad shapes, non-reduced words, cone violations),
500 for internal invariant failures.
"""

import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from ..rootdata import QnilInternalError, QnilUsageError
from . import service

SCHEMA_TAG = "qnil/1"

_BASIS_KINDS = ("pbw", "dcb", "glow")


def _envelope(report):
    return {"schema": SCHEMA_TAG, "ok": bool(report.get("ok", True)),
            "report": report}


def _error(status, kind, message):
    return JSONResponse(
        status_code=status,
        content={"schema": SCHEMA_TAG, "ok": False,
                 "error": {"type": kind, "message": message}})


def _validation_message(exc: ValidationError) -> str:
    bits = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<body>"
        bits.append("%s: %s" % (loc, err["msg"]))
    return "; ".join(bits)


async def _body(request: Request):
    raw = await request.body()
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except ValueError:
        raise QnilUsageError("request body is not valid JSON")
    if not isinstance(data, dict):
        raise QnilUsageError("request body must be a JSON object")
    return data


def create_app() -> FastAPI:
    from .. import __version__

    app = FastAPI(title="qnil", version=__version__)

    @app.exception_handler(QnilUsageError)
    async def _usage(request, exc):
        return _error(422, "usage", str(exc))

    @app.exception_handler(QnilInternalError)
    async def _internal(request, exc):
        return _error(500, "internal", str(exc))

    @app.exception_handler(AssertionError)
    async def _assertion(request, exc):
        return _error(500, "internal", "invariant failed: %s" % exc)

    def validate(model_cls, data):
        try:
            return model_cls.model_validate(data)
        except ValidationError as exc:
            raise QnilUsageError(_validation_message(exc))

    @app.get("/health")
    async def health():
        return {"schema": SCHEMA_TAG, "ok": True,
                "report": {"version": __version__}}

    @app.post("/basis/{kind}")
    async def basis(kind: str, request: Request):
        if kind not in _BASIS_KINDS:
            raise QnilUsageError(
                "unknown basis %r; expected one of %s"
                % (kind, ", ".join(_BASIS_KINDS)))
        req = validate(service.models.BasisRequest, await _body(request))
        return _envelope(service.basis(kind, req))

    @app.post("/twist")
    async def twist(request: Request):
        req = validate(service.models.TwistRequest, await _body(request))
        return _envelope(service.twist(req))

    @app.post("/minor")
    async def minor(request: Request):
        req = validate(service.models.MinorRequest, await _body(request))
        return _envelope(service.minor_report(req))

    @app.post("/verify/{check}")
    async def verify(check: str, request: Request):
        entry = service.VERIFY_HANDLERS.get(check)
        if entry is None:
            raise QnilUsageError(
                "unknown check %r; expected one of %s"
                % (check, ", ".join(sorted(service.VERIFY_HANDLERS))))
        model_cls, handler = entry
        req = validate(model_cls, await _body(request))
        return _envelope(handler(req))

    return app
