"""HTTP facade for the web UI and other clients: classification, graph
export, transition suggestions, and one-shot paraphrasing.

Every error body is {"code", "message"} with code one of bad_request,
backend_unavailable, not_found, internal (HTTP 400/503/404/500). A
graph-invalid (source, target) pick is never blocked; the response carries
"graph_valid": false and the choice stays with the user.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional, Union

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import prefix
from .classify import Classifier, LexiconClassifier, dominant_emotion
from .errors import GatewayError
from .generate import EchoGenerator, Generator
from .graph import TransitionGraph, build_default, dump_graph, is_valid_transition, targets_of
from .taxonomy import EMOTIONS, UnknownEmotionError, resolve

_STATUS = {
    "bad_request": 400,
    "backend_unavailable": 503,
    "not_found": 404,
    "internal": 500,
}


class ApiError(Exception):
    def __init__(self, code: str, message: str):
        assert code in _STATUS
        super().__init__(message)
        self.code = code
        self.message = message


class ClassifyRequest(BaseModel):
    text: str


class TransitionsRequest(BaseModel):
    emotion: Union[int, str]


class ParaphraseRequest(BaseModel):
    text: str
    target: Union[int, str]
    source: Optional[Union[int, str]] = None


def create_app(
    classifier: Optional[Classifier] = None,
    generator: Optional[Generator] = None,
    graph: Optional[TransitionGraph] = None,
    threshold: float = 0.5,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    classifier = classifier or LexiconClassifier()
    generator = generator or EchoGenerator()
    graph = graph or build_default()

    graph_doc = dump_graph(graph)
    graph_body = json.dumps(graph_doc, ensure_ascii=False).encode("utf-8")
    graph_etag = '"' + hashlib.sha256(graph_body).hexdigest() + '"'

    app = FastAPI(title="emogradient", docs_url=None, redoc_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=_STATUS[exc.code],
            content={"code": exc.code, "message": exc.message},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "bad_request", "message": str(exc.errors()[:1])},
        )

    @app.exception_handler(Exception)
    async def _internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"code": "internal", "message": f"{type(exc).__name__}: {exc}"},
        )

    def _resolve_or(code: str, token) -> int:
        try:
            return resolve(token).id
        except (UnknownEmotionError, TypeError) as exc:
            raise ApiError(code, str(exc)) from exc

    def _classify_one(text: str):
        try:
            scores = classifier.classify_scores([text])[0]
        except GatewayError as exc:
            raise ApiError("backend_unavailable", str(exc)) from exc
        return scores, dominant_emotion(scores, threshold)

    @app.post("/api/classify")
    async def classify(body: ClassifyRequest):
        if not body.text.strip():
            raise ApiError("bad_request", "text must be non-empty")
        scores, label = _classify_one(body.text)
        return {
            "emotion": None if label.emotion is None else EMOTIONS[label.emotion].name,
            "id": label.emotion,
            "score": label.score,
            "scores": list(scores),
        }

    async def _graph_endpoint(request: Request):
        if request.headers.get("if-none-match") == graph_etag:
            return Response(status_code=304, headers={"ETag": graph_etag})
        return Response(
            content=graph_body,
            media_type="application/json",
            headers={"ETag": graph_etag},
        )

    app.get("/api/graph")(_graph_endpoint)
    app.get("/graph")(_graph_endpoint)  # alias kept for config tooling

    @app.post("/api/transitions")
    async def transitions(body: TransitionsRequest):
        src = _resolve_or("not_found", body.emotion)
        return {
            "suggestions": [
                {
                    "target": s.target,
                    "target_name": EMOTIONS[s.target].name,
                    "hops": s.hops,
                    "rationale": s.rationale,
                }
                for s in targets_of(graph, src)
            ]
        }

    @app.post("/api/paraphrase")
    async def paraphrase(body: ParaphraseRequest):
        if not body.text.strip():
            raise ApiError("bad_request", "text must be non-empty")
        target = _resolve_or("bad_request", body.target)
        if body.source is None:
            _, label = _classify_one(body.text)
            if label.emotion is None:
                raise ApiError(
                    "bad_request",
                    "no dominant emotion found for the text; pass an explicit source",
                )
            source = label.emotion
        else:
            source = _resolve_or("bad_request", body.source)
        line = prefix.encode(body.text, source, target)
        try:
            result = generator.generate_batch([line])[0]
        except GatewayError as exc:
            raise ApiError("backend_unavailable", str(exc)) from exc
        return {
            "output": result.output,
            "prefix": line,
            "source": {"id": source, "name": EMOTIONS[source].name},
            "target": {"id": target, "name": EMOTIONS[target].name},
            "graph_valid": is_valid_transition(graph, source, target),
        }

    return app
