"""Byte premiums measured on gzip-compressed text.

Each language column is joined with ``\\n`` and compressed as one document
(gzip, level 9, mtime 0, no filename) so repeated runs give identical bytes.
"""

from __future__ import annotations

import gzip

from .corpus import MultiParallelCorpus
from .errors import DegenerateCorpusError
from .tags import LanguageTag, as_tag

LEVEL = 9


def gzip_bytes(text: str) -> bytes:
    return gzip.compress(text.encode("utf-8"), compresslevel=LEVEL, mtime=0)


def compressed_sizes(corpus: MultiParallelCorpus) -> dict[LanguageTag, int]:
    return {tag: len(gzip_bytes("\n".join(corpus.column(tag)))) for tag in corpus.languages}


def compressed_premiums(corpus: MultiParallelCorpus, reference) -> dict[LanguageTag, float]:
    reference = as_tag(reference)
    corpus.index(reference)
    ref_col = corpus.column(reference)
    if not any(ref_col):
        raise DegenerateCorpusError(f"reference {reference} has zero total bytes")
    sizes = compressed_sizes(corpus)
    base = sizes[reference]
    out = {tag: size / base for tag, size in sizes.items()}
    out[reference] = 1.0
    return out
