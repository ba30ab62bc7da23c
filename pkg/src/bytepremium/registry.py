"""Bundled premium table and per-language metadata.

``data/premiums.csv`` holds the published NLLB-derived premiums relative to
English. ``data/metadata.csv`` carries script type and language family for
the same languages; bytes-per-character and character entropy are empty
because they were never published and no corpora ship with the package.
"""

from __future__ import annotations

import csv
import functools
import io
from dataclasses import dataclass
from importlib import resources

from .errors import FormatError
from .table import PremiumTable, loads_table
from .tags import LanguageTag, ScriptType, as_tag, script_type_for

METADATA_HEADER = ("language", "script_type", "family", "bytes_per_char", "char_entropy")
PREMIUM_SOURCES = ("bundled", "fitted", "parallel-derived", "predicted")
DEFAULT_REFERENCE = LanguageTag("eng", "latn")


@dataclass(frozen=True)
class LanguageMetadata:
    tag: LanguageTag
    script_type: ScriptType
    family: str | None = None
    bytes_per_char: float | None = None
    char_entropy: float | None = None
    premium: float | None = None
    premium_source: str | None = None


def _read_data(name: str) -> str:
    return resources.files("bytepremium").joinpath("data", name).read_text(encoding="utf-8")


def bundled_premiums_text() -> str:
    """Raw text of the shipped premium CSV."""
    return _read_data("premiums.csv")


@functools.lru_cache(maxsize=None)
def bundled_table() -> PremiumTable:
    return loads_table(bundled_premiums_text())


def _opt(value: str, cast=float):
    value = value.strip()
    return cast(value) if value else None


def parse_metadata(text: str, table: PremiumTable | None = None) -> dict[LanguageTag, LanguageMetadata]:
    """Parse ``metadata.csv``; script types must agree with the ISO 15924 mapping."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != METADATA_HEADER:
        raise FormatError(f"expected metadata header {','.join(METADATA_HEADER)}, got {header}")
    out = {}
    for i, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(METADATA_HEADER):
            raise FormatError(f"metadata row {i}: expected {len(METADATA_HEADER)} fields, got {len(row)}")
        tag = as_tag(row[0])
        st = ScriptType.parse(row[1])
        mapped = script_type_for(tag.script)
        if mapped is not None and mapped != st:
            raise FormatError(f"metadata row {i}: {tag} listed as {st}, but script {tag.iso15924} is {mapped}")
        premium = table.premiums.get(tag) if table is not None else None
        out[tag] = LanguageMetadata(
            tag=tag,
            script_type=st,
            family=row[2].strip() or None,
            bytes_per_char=_opt(row[3]),
            char_entropy=_opt(row[4]),
            premium=premium,
            premium_source="bundled" if premium is not None else None,
        )
    return out


@functools.lru_cache(maxsize=None)
def bundled_metadata() -> dict[LanguageTag, LanguageMetadata]:
    return parse_metadata(_read_data("metadata.csv"), bundled_table())


def metadata_for(tag) -> LanguageMetadata | None:
    return bundled_metadata().get(as_tag(tag))


def family_of(tag) -> str | None:
    meta = metadata_for(tag)
    return meta.family if meta else None
