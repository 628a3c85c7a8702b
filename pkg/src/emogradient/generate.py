"""Paraphrase generator gateway.

Every request carries a prefix-encoded input line; all backends validate the
prefix before doing anything so malformed traffic fails loudly at the edge.
Backends: ``remote`` (HTTP model server), ``echo`` (returns the body
unchanged, for wiring checks), and ``oracle`` (returns the reference target
for a known source text, test only).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import requests

from . import prefix
from .errors import (
    BackendUnavailableError,
    EmptyOutputError,
    GatewayError,
    MalformedResponseError,
    with_retries,
)

GENERATOR_URL_ENV = "GRADIENT_GENERATOR_URL"
DEFAULT_MAX_LENGTH = 128


@dataclass(frozen=True)
class GenerationRequest:
    input: str  # prefix_codec line: "<src> to <tgt>: <body>"
    max_length: int = DEFAULT_MAX_LENGTH


@dataclass(frozen=True)
class GenerationResult:
    output: str
    backend: str
    latency_ms: int


@dataclass(frozen=True)
class GeneratorConfig:
    backend: str = "echo"  # remote | echo | oracle
    endpoint: Optional[str] = None
    max_length: int = DEFAULT_MAX_LENGTH

    def __post_init__(self):
        if self.backend not in ("remote", "echo", "oracle"):
            raise ValueError(f"unknown generator backend {self.backend!r}")
        if self.max_length < 1:
            raise ValueError("max_length must be positive")


class Generator:
    name = "base"

    def _run(self, inputs: Sequence[str], max_length: int) -> list[str]:
        raise NotImplementedError

    def generate_batch(
        self, inputs: Sequence[str], max_length: int = DEFAULT_MAX_LENGTH
    ) -> list[GenerationResult]:
        for line in inputs:
            prefix.decode(line)  # every input must carry a valid prefix
        start = time.perf_counter()
        outputs = self._run(inputs, max_length)
        latency = int((time.perf_counter() - start) * 1000)
        if len(outputs) != len(inputs):
            raise MalformedResponseError(
                f"generator returned {len(outputs)} outputs for {len(inputs)} inputs"
            )
        results = []
        for line, out in zip(inputs, outputs):
            if not out:
                raise EmptyOutputError(f"empty output for input {line!r}")
            results.append(GenerationResult(out, self.name, latency))
        return results

    def generate(self, req: GenerationRequest) -> GenerationResult:
        return self.generate_batch([req.input], req.max_length)[0]


class EchoGenerator(Generator):
    """Returns the prefix body unchanged; maxes every reference metric when
    the reference is the input text."""

    name = "echo"

    def _run(self, inputs: Sequence[str], max_length: int) -> list[str]:
        return [prefix.decode(line)[2] for line in inputs]


class OracleGenerator(Generator):
    """Maps each source text to its reference target; drives emotion exact
    match to 1.0 when the evaluating classifier agrees with the labels."""

    name = "oracle"

    def __init__(self, table: Mapping[str, str]):
        self._table = dict(table)

    def _run(self, inputs: Sequence[str], max_length: int) -> list[str]:
        out = []
        for line in inputs:
            body = prefix.decode(line)[2]
            if body not in self._table:
                raise GatewayError(f"oracle table has no entry for source text {body!r}")
            out.append(self._table[body])
        return out


class RemoteGenerator(Generator):
    """POST {endpoint}/generate with {"inputs": [...], "max_length": N};
    expects {"outputs": [...]} back, order-preserving."""

    name = "remote"

    def __init__(
        self,
        endpoint: str,
        timeout: float = 60.0,
        attempts: int = 3,
        base_delay: float = 0.2,
        session: Optional[requests.Session] = None,
        sleep=None,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.attempts = attempts
        self.base_delay = base_delay
        self._session = session or requests.Session()
        self._sleep_kwargs = {} if sleep is None else {"sleep": sleep}

    def _run(self, inputs: Sequence[str], max_length: int) -> list[str]:
        def call():
            return self._session.post(
                f"{self.endpoint}/generate",
                json={"inputs": list(inputs), "max_length": max_length},
                timeout=self.timeout,
            )

        resp = with_retries(
            call,
            attempts=self.attempts,
            base_delay=self.base_delay,
            retry_on=(requests.ConnectionError, requests.Timeout),
            **self._sleep_kwargs,
        )
        if resp.status_code != 200:
            raise BackendUnavailableError(
                f"generator returned HTTP {resp.status_code}: {resp.text[:200]}"
            )
        try:
            outputs = resp.json()["outputs"]
            if not isinstance(outputs, list) or not all(isinstance(o, str) for o in outputs):
                raise ValueError("outputs must be a list of strings")
            return outputs
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponseError(f"bad generator response: {exc}") from exc


def make_generator(
    config: GeneratorConfig, oracle_table: Optional[Mapping[str, str]] = None
) -> Generator:
    if config.backend == "echo":
        return EchoGenerator()
    if config.backend == "oracle":
        if oracle_table is None:
            raise ValueError("oracle generator needs a source-to-target table")
        return OracleGenerator(oracle_table)
    endpoint = config.endpoint or os.environ.get(GENERATOR_URL_ENV)
    if not endpoint:
        raise ValueError(f"remote generator needs an endpoint (flag or {GENERATOR_URL_ENV})")
    return RemoteGenerator(endpoint)
