"""HTTP wrapper exposing the gateway wire protocols.

POST /classify {"texts": [...]}                -> {"scores": [[28 floats], ...]}
POST /generate {"inputs": [...], "max_length"} -> {"outputs": [...]}

Stub mode serves the deterministic hash/echo backends and needs no model
weights. Real mode loads the configured checkpoints through transformers
on first use (greedy decoding); requests arriving before the load
finishes, or after it fails, get a 503. Error bodies are always
{"code", "message"}.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import AdapterConfig
from .stub import NUM_EMOTIONS, PrefixError, stub_generate, stub_scores


class ClassifyRequest(BaseModel):
    texts: list[str]


class GenerateRequest(BaseModel):
    inputs: list[str]
    max_length: int = 128


class RealBackends:
    """Checkpoint-backed inference; models must already be present locally.

    Classification applies a sigmoid over the model logits (padding or
    trimming to 28 scores if the checkpoint's head differs); generation
    decodes greedily up to max_length tokens.
    """

    def __init__(self, config: AdapterConfig):
        import torch
        from transformers import (
            AutoModelForSeq2SeqLM,
            AutoModelForSequenceClassification,
            AutoTokenizer,
        )

        self.torch = torch
        self.clf_tokenizer = AutoTokenizer.from_pretrained(config.classifier_model)
        self.clf_model = AutoModelForSequenceClassification.from_pretrained(
            config.classifier_model
        )
        self.gen_tokenizer = AutoTokenizer.from_pretrained(config.generator_model)
        self.gen_model = AutoModelForSeq2SeqLM.from_pretrained(config.generator_model)
        self.clf_model.eval()
        self.gen_model.eval()

    def classify(self, texts: list[str]) -> list[list[float]]:
        torch = self.torch
        with torch.no_grad():
            enc = self.clf_tokenizer(
                texts, padding=True, truncation=True, return_tensors="pt"
            )
            scores = torch.sigmoid(self.clf_model(**enc).logits)
        rows = scores.tolist()
        return [
            (row + [0.0] * NUM_EMOTIONS)[:NUM_EMOTIONS] for row in rows
        ]

    def generate(self, inputs: list[str], max_length: int) -> list[str]:
        torch = self.torch
        with torch.no_grad():
            enc = self.gen_tokenizer(
                inputs, padding=True, truncation=True, return_tensors="pt"
            )
            out = self.gen_model.generate(
                **enc, max_length=max_length, do_sample=False, num_beams=1
            )
        return self.gen_tokenizer.batch_decode(out, skip_special_tokens=True)


def create_app(config: Optional[AdapterConfig] = None) -> FastAPI:
    config = config or AdapterConfig()
    app = FastAPI(title="gradient-adapter", docs_url=None, redoc_url=None)
    state = {"backends": None, "load_error": None}

    def backends() -> RealBackends:
        if state["load_error"] is not None:
            raise state["load_error"]
        if state["backends"] is None:
            try:
                state["backends"] = RealBackends(config)
            except Exception as exc:
                state["load_error"] = exc
                raise
        return state["backends"]

    def error(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"code": code, "message": message})

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        return error(400, "bad_request", str(exc.errors()[:1]))

    @app.post("/classify")
    async def classify(body: ClassifyRequest):
        if config.mode == "stub":
            return {"scores": [stub_scores(t) for t in body.texts]}
        try:
            return {"scores": backends().classify(body.texts)}
        except Exception as exc:
            return error(503, "backend_unavailable", f"model unavailable: {exc}")

    @app.post("/generate")
    async def generate(body: GenerateRequest):
        if body.max_length < 1:
            return error(400, "bad_request", "max_length must be >= 1")
        if config.mode == "stub":
            try:
                return {"outputs": [stub_generate(line) for line in body.inputs]}
            except PrefixError as exc:
                return error(400, "bad_request", str(exc))
        try:
            return {"outputs": backends().generate(body.inputs, body.max_length)}
        except Exception as exc:
            return error(503, "backend_unavailable", f"model unavailable: {exc}")

    return app
