"""Generator gateway: echo and oracle stubs, remote wire handling, retries."""

import pytest
import requests

from emogradient.errors import (
    BackendUnavailableError,
    EmptyOutputError,
    GatewayError,
    MalformedResponseError,
)
from emogradient.generate import (
    DEFAULT_MAX_LENGTH,
    EchoGenerator,
    GenerationRequest,
    GeneratorConfig,
    OracleGenerator,
    RemoteGenerator,
    make_generator,
)
from emogradient.prefix import PrefixError, encode


def test_echo_returns_the_body():
    g = EchoGenerator()
    [res] = g.generate_batch(["2 to 3: you never listen"])
    assert res.output == "you never listen"
    assert res.backend == "echo"
    assert res.latency_ms >= 0.0


def test_echo_single_helper():
    g = EchoGenerator()
    assert g.generate(GenerationRequest("2 to 27: calm down")).output == "calm down"


def test_inputs_must_carry_a_valid_prefix():
    g = EchoGenerator()
    with pytest.raises(PrefixError):
        g.generate_batch(["no prefix here"])
    with pytest.raises(PrefixError):
        g.generate_batch(["2 to 3: ok", "broken line"])


def test_oracle_looks_up_by_source_text():
    g = OracleGenerator({"you never listen": "you don't hear me"})
    [res] = g.generate_batch([encode("you never listen", 2, 3)])
    assert res.output == "you don't hear me"
    assert res.backend == "oracle"


def test_oracle_missing_entry_fails():
    g = OracleGenerator({"known": "out"})
    with pytest.raises(GatewayError):
        g.generate_batch([encode("unknown", 2, 3)])


def test_empty_output_is_an_error():
    g = OracleGenerator({"known": ""})
    with pytest.raises(EmptyOutputError):
        g.generate_batch([encode("known", 2, 3)])


def test_config_validation():
    GeneratorConfig(backend="echo")
    with pytest.raises(ValueError):
        GeneratorConfig(backend="quantum")
    with pytest.raises(ValueError):
        GeneratorConfig(backend="echo", max_length=0)
    assert GeneratorConfig(backend="echo").max_length == DEFAULT_MAX_LENGTH


class FakeResponse:
    def __init__(self, status_code=200, payload=None):
        self.status_code = status_code
        self._payload = payload
        self.text = str(payload)

    def json(self):
        return self._payload


class FakeSession:
    def __init__(self, script):
        self.script = list(script)
        self.calls = []

    def post(self, url, json=None, timeout=None):
        self.calls.append((url, json, timeout))
        item = self.script.pop(0)
        if isinstance(item, Exception):
            raise item
        return item


def remote(script, sleeps=None):
    session = FakeSession(script)
    g = RemoteGenerator(
        "http://example.test",
        session=session,
        sleep=(sleeps.append if sleeps is not None else lambda s: None),
    )
    return g, session


def test_remote_success_and_wire_shape():
    g, session = remote([FakeResponse(200, {"outputs": ["calm down please"]})])
    line = encode("calm down now", 2, 3)
    [res] = g.generate_batch([line], max_length=64)
    assert res.output == "calm down please"
    assert res.backend == "remote"
    url, payload, _ = session.calls[0]
    assert url == "http://example.test/generate"
    assert payload == {"inputs": [line], "max_length": 64}


def test_remote_default_max_length():
    g, session = remote([FakeResponse(200, {"outputs": ["x"]})])
    g.generate_batch([encode("hi there", 2, 3)])
    assert session.calls[0][1]["max_length"] == DEFAULT_MAX_LENGTH


def test_remote_count_mismatch():
    g, _ = remote([FakeResponse(200, {"outputs": ["a", "b"]})])
    with pytest.raises(MalformedResponseError):
        g.generate_batch([encode("hi", 2, 3)])


def test_remote_non_list_payload():
    g, _ = remote([FakeResponse(200, {"outputs": "nope"})])
    with pytest.raises(MalformedResponseError):
        g.generate_batch([encode("hi", 2, 3)])


def test_remote_missing_key():
    g, _ = remote([FakeResponse(200, {"texts": []})])
    with pytest.raises(MalformedResponseError):
        g.generate_batch([encode("hi", 2, 3)])


def test_remote_http_error():
    g, _ = remote([FakeResponse(503, {"error": "overloaded"})])
    with pytest.raises(BackendUnavailableError):
        g.generate_batch([encode("hi", 2, 3)])


def test_remote_empty_output_string():
    g, _ = remote([FakeResponse(200, {"outputs": [""]})])
    with pytest.raises(EmptyOutputError):
        g.generate_batch([encode("hi", 2, 3)])


def test_remote_retries_with_backoff():
    sleeps = []
    g, session = remote(
        [
            requests.ConnectionError("down"),
            requests.Timeout("slow"),
            FakeResponse(200, {"outputs": ["ok then"]}),
        ],
        sleeps=sleeps,
    )
    [res] = g.generate_batch([encode("hi", 2, 3)])
    assert res.output == "ok then"
    assert len(session.calls) == 3
    assert sleeps == [pytest.approx(0.2), pytest.approx(0.4)]


def test_remote_exhausts_retries():
    sleeps = []
    g, session = remote([requests.ConnectionError("down")] * 4, sleeps=sleeps)
    with pytest.raises(BackendUnavailableError):
        g.generate_batch([encode("hi", 2, 3)])
    assert len(session.calls) == 3


def test_make_generator_backends(monkeypatch):
    assert isinstance(make_generator(GeneratorConfig(backend="echo")), EchoGenerator)
    g = make_generator(GeneratorConfig(backend="oracle"), oracle_table={"a": "b"})
    assert isinstance(g, OracleGenerator)
    with pytest.raises(ValueError):
        make_generator(GeneratorConfig(backend="oracle"))
    monkeypatch.delenv("GRADIENT_GENERATOR_URL", raising=False)
    with pytest.raises(ValueError):
        make_generator(GeneratorConfig(backend="remote"))
    monkeypatch.setenv("GRADIENT_GENERATOR_URL", "http://env.test")
    r = make_generator(GeneratorConfig(backend="remote"))
    assert isinstance(r, RemoteGenerator)
    assert r.endpoint == "http://env.test"
