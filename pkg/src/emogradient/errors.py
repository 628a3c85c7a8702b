"""Shared gateway error taxonomy and the retry helper both gateways use."""

from __future__ import annotations

import time
from typing import Callable, TypeVar

T = TypeVar("T")


class GatewayError(RuntimeError):
    """Base class for classifier/generator backend failures."""


class BackendUnavailableError(GatewayError):
    """Backend unreachable after the retry budget is exhausted."""


class MalformedResponseError(GatewayError):
    """Backend answered, but the payload violates the wire contract."""


class EmptyOutputError(GatewayError):
    """Generator returned an empty string for a request."""


def with_retries(
    fn: Callable[[], T],
    attempts: int = 3,
    base_delay: float = 0.2,
    retry_on: tuple[type[BaseException], ...] = (ConnectionError, TimeoutError),
    sleep: Callable[[float], None] = time.sleep,
) -> T:
    """Call ``fn`` up to ``attempts`` times with exponential backoff
    (base_delay, 2x each retry). Only ``retry_on`` exceptions are retried;
    exhaustion raises BackendUnavailableError chained to the last failure.
    ``sleep`` is injectable so tests do not wait.
    """
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    delay = base_delay
    last: BaseException | None = None
    for attempt in range(attempts):
        try:
            return fn()
        except retry_on as exc:
            last = exc
            if attempt + 1 < attempts:
                sleep(delay)
                delay *= 2
    raise BackendUnavailableError(f"backend unreachable after {attempts} attempts: {last}") from last
