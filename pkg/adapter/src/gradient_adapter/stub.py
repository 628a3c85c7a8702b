"""Deterministic stub backends.

The stub classifier hashes the text and unpacks the digest into 28 scores,
so identical texts always score identically and no model weights are
needed. The stub generator strips the task prefix and returns the body
unchanged (echo-equivalent), which keeps the whole toolchain runnable
offline.
"""

import hashlib

from emogradient import prefix
from emogradient.prefix import PrefixError

NUM_EMOTIONS = 28


def stub_scores(text: str) -> list[float]:
    """28 pseudo-scores in [0, 1], keyed by the text bytes."""
    digest = hashlib.sha512(text.encode("utf-8")).digest()  # 64 bytes, 56 used
    return [
        int.from_bytes(digest[2 * i : 2 * i + 2], "big") / 65535.0
        for i in range(NUM_EMOTIONS)
    ]


def stub_generate(line: str) -> str:
    """Return the body of a prefix-encoded line; PrefixError when malformed."""
    _, _, body = prefix.decode(line)
    return body


__all__ = ["NUM_EMOTIONS", "PrefixError", "stub_scores", "stub_generate"]
