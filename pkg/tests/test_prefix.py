"""Task prefix encoding and parsing."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from emogradient.prefix import PrefixError, decode, encode


def test_encode_by_id():
    assert encode("you never listen", 2, 3) == "2 to 3: you never listen"


def test_encode_by_name():
    assert encode("I won!", 17, 27, by="name") == "joy to neutral: I won!"


def test_decode_id_form():
    assert decode("2 to 3: you never listen") == (2, 3, "you never listen")


def test_decode_name_form():
    assert decode("joy to neutral: I won!") == (17, 27, "I won!")


def test_body_survives_separator_lookalikes():
    body = "go to the store: then stop"
    line = encode(body, 2, 27)
    assert decode(line) == (2, 27, body)


def test_body_with_colon_space_first():
    body = ": starts with the separator"
    assert decode(encode(body, 0, 27)) == (0, 27, body)


def test_first_to_token_wins():
    # only the first " to " splits the head; the rest belongs to the body
    assert decode("anger to neutral: a to b: c") == (2, 27, "a to b: c")


def test_mixed_token_kinds_rejected():
    with pytest.raises(PrefixError):
        decode("2 to neutral: hello")
    with pytest.raises(PrefixError):
        decode("anger to 27: hello")


def test_unknown_tokens_rejected():
    with pytest.raises(PrefixError):
        decode("angst to neutral: hello")
    with pytest.raises(PrefixError):
        decode("28 to 2: hello")
    with pytest.raises(PrefixError):
        decode("-1 to 2: hello")


def test_missing_separators_rejected():
    with pytest.raises(PrefixError):
        decode("2 3: hello")
    with pytest.raises(PrefixError):
        decode("2 to 3 hello")
    with pytest.raises(PrefixError):
        decode("")


def test_encode_rejects_blank_bodies():
    for body in ("", "   ", "\t\n"):
        with pytest.raises(PrefixError):
            encode(body, 2, 3)


def test_encode_rejects_bad_ids_and_modes():
    with pytest.raises(PrefixError):
        encode("hello", 28, 3)
    with pytest.raises(PrefixError):
        encode("hello", 2, -1)
    with pytest.raises(PrefixError):
        encode("hello", 2, 3, by="uuid")


bodies = st.text(min_size=1, max_size=80).filter(
    lambda s: s.strip() and "\n" not in s and "\r" not in s
)


@given(
    body=bodies,
    src=st.integers(0, 27),
    tgt=st.integers(0, 27),
    by=st.sampled_from(["id", "name"]),
)
def test_round_trip(body, src, tgt, by):
    assert decode(encode(body, src, tgt, by=by)) == (src, tgt, body)
