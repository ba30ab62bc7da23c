import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bytepremium.errors import InsufficientDataError
from bytepremium.metrics import byte_len, char_entropy, char_len, profile
from bytepremium.tags import ScriptType

texts = st.text(st.characters(blacklist_categories=("Cs",)), max_size=60)


@pytest.mark.parametrize("s,nbytes,nchars", [("abc", 3, 3), ("héllo", 6, 5), ("日本", 6, 2), ("", 0, 0), ("😀", 4, 1)])
def test_lengths(s, nbytes, nchars):
    assert byte_len(s) == nbytes
    assert char_len(s) == nchars


@pytest.mark.parametrize("texts,expected", [
    (["aaaa"], 0.0),
    (["ab"], 1.0),
    # -(2/3)log2(2/3) - (1/3)log2(1/3)
    (["aab"], 0.9182958340544896),
    (["a", "", "b"], 1.0),
])
def test_entropy_values(texts, expected):
    assert char_entropy(texts) == pytest.approx(expected, abs=1e-12)


def test_entropy_requires_text():
    with pytest.raises(InsufficientDataError):
        char_entropy(["", ""])
    with pytest.raises(InsufficientDataError):
        profile("eng_latn", [""], "alphabet")


def test_entropy_whitespace_option():
    assert char_entropy(["a a"]) > 0
    assert char_entropy(["a a"], exclude_whitespace=True) == 0.0


def test_profile_examples():
    eng = profile("eng_latn", ["abc"], ScriptType.ALPHABET, "Indo-European")
    assert eng.bytes_per_char == 1.0
    assert eng.family == "Indo-European"
    jpn = profile("jpn_jpan", ["日本"], "logography", "Japonic")
    assert jpn.bytes_per_char == 3.0
    assert jpn.script_type is ScriptType.LOGOGRAPHY


@given(texts)
@settings(max_examples=500, deadline=None)
def test_byte_len_bounds(s):
    assert byte_len(s) >= char_len(s)
    assert (byte_len(s) == char_len(s)) == s.isascii()
    if s:
        assert 1.0 <= byte_len(s) / char_len(s) <= 4.0
        h = char_entropy([s])
        assert 0.0 <= h <= math.log2(len(set(s))) + 1e-12


@given(st.integers(1, 300))
def test_equiprobable_entropy_is_log2k(k):
    s = "".join(chr(0x4E00 + i) for i in range(k))
    assert abs(char_entropy([s, s]) - math.log2(k)) <= 1e-12


@given(st.lists(texts, min_size=1, max_size=8).filter(lambda ts: any(ts)), st.randoms())
def test_entropy_pooling_invariances(ts, rnd):
    h = char_entropy(ts)
    shuffled = list(ts)
    rnd.shuffle(shuffled)
    assert char_entropy(shuffled) == pytest.approx(h, abs=1e-12)
    assert char_entropy(["".join(ts)]) == pytest.approx(h, abs=1e-12)
    assert char_entropy(ts + ts) == pytest.approx(h, abs=1e-12)


@given(st.lists(texts, min_size=1, max_size=8).filter(lambda ts: any(ts)))
def test_profile_duplication_invariant(ts):
    p1 = profile("eng_latn", ts, "alphabet")
    p2 = profile("eng_latn", ts * 2, "alphabet")
    assert p2.bytes_per_char == p1.bytes_per_char
    assert p2.char_entropy == pytest.approx(p1.char_entropy, abs=1e-12)
    assert p1.total_bytes >= p1.total_chars


def test_entropy_from_20_lines_tracks_full_corpus(rng):
    # synthetic languages with alphabets of different sizes and Zipf-like letter use
    full, short = [], []
    for k in rng.integers(5, 200, 25):
        weights = 1.0 / np.arange(1, k + 1) ** rng.uniform(0.5, 1.5)
        weights /= weights.sum()
        alphabet = np.array([chr(0x0400 + i) for i in range(k)])
        lines = ["".join(rng.choice(alphabet, size=80, p=weights)) for _ in range(1000)]
        full.append(char_entropy(lines))
        short.append(char_entropy(lines[:20]))
    assert np.corrcoef(full, short)[0, 1] > 0.90
