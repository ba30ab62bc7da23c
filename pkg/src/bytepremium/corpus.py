"""Loading bitexts and multi-parallel corpora from line-oriented UTF-8 files.

One line is one segment. Text is kept exactly as stored on disk (no Unicode
normalization, no stripping) unless the caller opts into NFC, since any
rewrite changes the byte counts this package exists to measure. Empty lines
are kept so alignment with external tools is preserved; ratio computations
skip them later.
"""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    AlignmentError,
    CorpusDecodeError,
    DuplicateLanguageError,
    EmptyCorpusError,
    FormatError,
    UnknownLanguageError,
)
from .tags import LanguageTag, as_tag

NORMALIZATIONS = (None, "nfc")


@dataclass(frozen=True)
class Bitext:
    lang_a: LanguageTag
    lang_b: LanguageTag
    segments: tuple[tuple[str, str], ...]

    def __len__(self):
        return len(self.segments)

    def swapped(self) -> Bitext:
        return Bitext(self.lang_b, self.lang_a, tuple((b, a) for a, b in self.segments))


@dataclass(frozen=True)
class MultiParallelCorpus:
    languages: tuple[LanguageTag, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(set(self.languages)) != len(self.languages):
            raise DuplicateLanguageError(f"duplicate language in {[str(t) for t in self.languages]}")
        width = len(self.languages)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise FormatError(f"row {i + 1} has {len(row)} columns, expected {width}")

    def __len__(self):
        return len(self.rows)

    def index(self, tag) -> int:
        tag = as_tag(tag)
        try:
            return self.languages.index(tag)
        except ValueError:
            raise UnknownLanguageError(tag, "not a column of this corpus") from None

    def column(self, tag) -> list[str]:
        j = self.index(tag)
        return [row[j] for row in self.rows]


def _read_lines(path, normalize=None) -> list[str]:
    if normalize not in NORMALIZATIONS:
        raise ValueError(f"normalize must be one of {NORMALIZATIONS}, got {normalize!r}")
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusDecodeError(path, exc.start, exc.reason) from None
    if not text:
        raise EmptyCorpusError(f"{path}: file is empty")
    if normalize == "nfc":
        text = unicodedata.normalize("NFC", text)
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def load_bitext(path_a, path_b, lang_a, lang_b, max_segments: int | None = None,
                normalize: str | None = None) -> Bitext:
    """Read two line-aligned files into a :class:`Bitext`.

    Both files must have the same number of lines. Only the first
    ``max_segments`` pairs are kept (prefix sampling, file order).
    """
    if max_segments is not None and max_segments < 1:
        raise ValueError("max_segments must be >= 1")
    a = _read_lines(path_a, normalize)
    b = _read_lines(path_b, normalize)
    if len(a) != len(b):
        raise AlignmentError(path_a, len(a), path_b, len(b))
    n = len(a) if max_segments is None else min(max_segments, len(a))
    return Bitext(as_tag(lang_a), as_tag(lang_b), tuple(zip(a[:n], b[:n])))


def load_multiparallel(path, normalize: str | None = None) -> MultiParallelCorpus:
    """Read a TSV whose header row lists canonical language tags."""
    lines = _read_lines(path, normalize)
    header = lines[0].split("\t")
    try:
        languages = tuple(LanguageTag.parse(h) for h in header)
    except ValueError as exc:
        raise FormatError(f"{path}: bad header: {exc}") from None
    seen = set()
    for tag in languages:
        if tag in seen:
            raise DuplicateLanguageError(f"{path}: language {tag} appears twice in header")
        seen.add(tag)
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != len(languages):
            raise FormatError(
                f"{path}: row {lineno} has {len(fields)} fields, header has {len(languages)}"
                " (tabs inside text are not supported)"
            )
        rows.append(tuple(fields))
    return MultiParallelCorpus(languages, tuple(rows))


def dumps_multiparallel(corpus: MultiParallelCorpus) -> str:
    out = ["\t".join(str(t) for t in corpus.languages)]
    for row in corpus.rows:
        if any("\t" in f or "\n" in f for f in row):
            raise FormatError("segment text contains a tab or newline and cannot be written as TSV")
        out.append("\t".join(row))
    return "\n".join(out) + "\n"


def write_multiparallel(corpus: MultiParallelCorpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dumps_multiparallel(corpus))


def multiparallel_from_columns(columns: dict, order: Sequence | None = None) -> MultiParallelCorpus:
    """Build a corpus from ``{tag: [segment, ...]}``; all columns must have equal length."""
    keys = list(order) if order is not None else list(columns)
    tags = tuple(as_tag(k) for k in keys)
    cols = [list(columns[k]) for k in keys]
    lengths = {len(c) for c in cols}
    if len(lengths) > 1:
        raise FormatError(f"columns have unequal lengths {sorted(lengths)}")
    return MultiParallelCorpus(tags, tuple(zip(*cols)))


def sample_lines(corpus: MultiParallelCorpus, n: int) -> MultiParallelCorpus:
    """Keep the first ``n`` rows. Prefix, not random, so results are reproducible."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return MultiParallelCorpus(corpus.languages, corpus.rows[:n])


def read_text_lines(path, normalize: str | None = None) -> list[str]:
    """Monolingual text file as a list of lines (same rules as the corpus loaders)."""
    return _read_lines(os.fspath(path), normalize)
