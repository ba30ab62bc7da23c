"""Byte, character and entropy statistics over UTF-8 text.

A "character" here is a Unicode code point, not a grapheme cluster. For
abugidas with combining vowel signs this counts each mark separately.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import InsufficientDataError
from .tags import LanguageTag, ScriptType, as_tag


def byte_len(text: str) -> int:
    return len(text.encode("utf-8"))


def char_len(text: str) -> int:
    return len(text)


def char_counts(texts: Iterable[str], exclude_whitespace: bool = False) -> Counter:
    counts: Counter = Counter()
    for t in texts:
        counts.update(t)
    if exclude_whitespace:
        for ch in [c for c in counts if c.isspace()]:
            del counts[ch]
    return counts


def entropy_from_counts(counts: Counter) -> float:
    total = sum(counts.values())
    if total == 0:
        raise InsufficientDataError("no characters to compute entropy over")
    # sorted for a fixed summation order
    h = 0.0
    for c in sorted(counts.values()):
        p = c / total
        h -= p * math.log2(p)
    return max(h, 0.0)


def char_entropy(texts: Iterable[str], exclude_whitespace: bool = False) -> float:
    """Shannon entropy in bits of the pooled code-point unigram distribution.

    Whitespace and punctuation count as characters unless
    ``exclude_whitespace`` is set. Empty strings are ignored.
    """
    if isinstance(texts, str):
        texts = [texts]
    return entropy_from_counts(char_counts(texts, exclude_whitespace))


@dataclass(frozen=True)
class LanguageProfile:
    tag: LanguageTag
    total_bytes: int
    total_chars: int
    char_entropy: float
    script_type: ScriptType
    family: str | None = None
    n_lines: int = 0

    @property
    def bytes_per_char(self) -> float:
        return self.total_bytes / self.total_chars


def profile(tag, texts: Iterable[str], script_type, family: str | None = None,
            exclude_whitespace: bool = False) -> LanguageProfile:
    """Aggregate monolingual statistics for one language."""
    texts = list(texts)
    counts = char_counts(texts)
    ent_counts = char_counts(texts, exclude_whitespace) if exclude_whitespace else counts
    entropy = entropy_from_counts(ent_counts)
    return LanguageProfile(
        tag=as_tag(tag),
        total_bytes=sum(byte_len(t) for t in texts),
        total_chars=sum(counts.values()),
        char_entropy=entropy,
        script_type=ScriptType.parse(script_type),
        family=family or None,
        n_lines=sum(1 for t in texts if t),
    )
