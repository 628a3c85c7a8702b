"""Task prefix codec: ``<src> to <tgt>: <body>``.

Source and target are either both numeric ids or both emotion names; the
body is carried byte-exact, so round-tripping never alters it. Decoding
splits on the FIRST `` to `` and then the FIRST ``: `` after it, which keeps
bodies containing either delimiter unambiguous.
"""

from __future__ import annotations

from .taxonomy import EMOTIONS, NUM_EMOTIONS, UnknownEmotionError, emotion_by_name


class PrefixError(ValueError):
    """The text does not carry a well-formed task prefix."""


def encode(body: str, src: int, tgt: int, by: str = "id") -> str:
    """Prepend the transition prefix to ``body``. ``by`` picks id or name form."""
    if not body.strip():
        raise PrefixError("body must be non-empty")
    for v in (src, tgt):
        if not isinstance(v, int) or not 0 <= v < NUM_EMOTIONS:
            raise PrefixError(f"emotion id out of range: {v!r}")
    if by == "id":
        return f"{src} to {tgt}: {body}"
    if by == "name":
        return f"{EMOTIONS[src].name} to {EMOTIONS[tgt].name}: {body}"
    raise PrefixError(f"unknown prefix form {by!r}")


def _parse_token(token: str) -> tuple[int, str]:
    """Returns (emotion_id, kind) where kind is 'id' or 'name'."""
    if token.isdigit():
        value = int(token)
        if value >= NUM_EMOTIONS:
            raise PrefixError(f"emotion id out of range: {token!r}")
        return value, "id"
    try:
        return emotion_by_name(token).id, "name"
    except UnknownEmotionError:
        raise PrefixError(f"unknown emotion token {token!r}") from None


def decode(text: str) -> tuple[int, int, str]:
    """Split off the prefix; returns (src_id, tgt_id, body).

    Raises PrefixError when the delimiters are absent, a token is not a
    known id or name, or the two tokens mix id and name forms.
    """
    head, sep, rest = text.partition(" to ")
    if not sep:
        raise PrefixError("missing ' to ' delimiter")
    tgt_tok, sep, body = rest.partition(": ")
    if not sep:
        raise PrefixError("missing ': ' delimiter")
    src, src_kind = _parse_token(head)
    tgt, tgt_kind = _parse_token(tgt_tok)
    if src_kind != tgt_kind:
        raise PrefixError(f"mixed token forms: {head!r} is {src_kind}, {tgt_tok!r} is {tgt_kind}")
    return src, tgt, body
