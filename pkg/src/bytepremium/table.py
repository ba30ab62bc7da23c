"""Gauge-fixed premium tables: lookup, rebasing and CSV persistence."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import FormatError, UnknownLanguageError
from .tags import LanguageTag, as_tag

CSV_HEADER = ("language", "byte_premium")

_PREDICT_HINT = (
    "it is not in the premium table; supply parallel text pairing it with a known "
    "language, or monolingual text plus its script type for a regression estimate"
)


@dataclass(frozen=True)
class PremiumTable:
    """Byte premium of each language relative to ``reference`` (whose premium is 1.0)."""

    reference: LanguageTag
    premiums: Mapping[LanguageTag, float]
    source: str = "unspecified"
    meta: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "reference", as_tag(self.reference))
        prem = {as_tag(k): float(v) for k, v in self.premiums.items()}
        for k, v in prem.items():
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"premium for {k} must be positive and finite, got {v}")
        if self.reference not in prem:
            raise UnknownLanguageError(self.reference, "reference language missing from table")
        if prem[self.reference] != 1.0:
            raise ValueError(f"reference {self.reference} must have premium exactly 1.0, got {prem[self.reference]}")
        object.__setattr__(self, "premiums", dict(sorted(prem.items())))

    @classmethod
    def from_premiums(cls, premiums: Mapping, reference, source: str = "unspecified") -> PremiumTable:
        """Build a table from any positive premium map, dividing through by the reference value."""
        reference = as_tag(reference)
        prem = {as_tag(k): float(v) for k, v in premiums.items()}
        if reference not in prem:
            raise UnknownLanguageError(reference, "reference language missing from premiums")
        base = prem[reference]
        scaled = {k: (1.0 if k == reference else v / base) for k, v in prem.items()}
        return cls(reference, scaled, source)

    def __contains__(self, tag):
        try:
            return as_tag(tag) in self.premiums
        except ValueError:
            return False

    def __len__(self):
        return len(self.premiums)

    def __getitem__(self, tag) -> float:
        tag = as_tag(tag)
        try:
            return self.premiums[tag]
        except KeyError:
            raise UnknownLanguageError(tag, _PREDICT_HINT) from None

    @property
    def languages(self) -> list[LanguageTag]:
        return list(self.premiums)


def pairwise_lookup(table: PremiumTable, lang_a, lang_b) -> float:
    """Byte premium of ``lang_a`` relative to ``lang_b``."""
    a = table[lang_a]
    b = table[lang_b]
    if as_tag(lang_a) == as_tag(lang_b):
        return 1.0
    return a / b


def rebase(table: PremiumTable, new_reference) -> PremiumTable:
    new_reference = as_tag(new_reference)
    base = table[new_reference]
    if new_reference == table.reference:
        return table
    prem = {k: (1.0 if k == new_reference else v / base) for k, v in table.premiums.items()}
    return PremiumTable(new_reference, prem, table.source)


# -- CSV ------------------------------------------------------------------------

def dumps_table(table: PremiumTable, comment: bool = True) -> str:
    buf = io.StringIO()
    if comment:
        buf.write(f"# source={table.source} reference={table.reference}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for tag, value in table.premiums.items():
        w.writerow([str(tag), repr(value)])
    return buf.getvalue()


def dumps_premium_map(premiums: Mapping) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for tag, value in sorted((as_tag(k), float(v)) for k, v in premiums.items()):
        w.writerow([str(tag), repr(value)])
    return buf.getvalue()


def _parse_comment(line: str) -> dict[str, str]:
    meta = {}
    for part in line.lstrip("#").split():
        key, sep, value = part.partition("=")
        if sep:
            meta[key] = value
    return meta


def loads_table(text: str, reference=None, source: str | None = None) -> PremiumTable:
    """Parse the ``language,byte_premium`` CSV format.

    The reference comes from the argument, else the ``#`` comment line, else
    the unique language whose premium is exactly 1.0.
    """
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            meta.update(_parse_comment(line))
        elif line.strip():
            body.append(line)
    rows = csv.reader(body)
    header = next(rows, None)
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        raise FormatError(f"expected header {','.join(CSV_HEADER)}, got {header}")
    premiums: dict[LanguageTag, float] = {}
    for i, row in enumerate(rows, start=2):
        if len(row) != 2:
            raise FormatError(f"premium CSV row {i}: expected 2 fields, got {len(row)}")
        tag = as_tag(row[0])
        if tag in premiums:
            raise FormatError(f"premium CSV row {i}: duplicate language {tag}")
        premiums[tag] = float(row[1])
    ref = reference or meta.get("reference")
    if ref is None:
        ones = [k for k, v in premiums.items() if v == 1.0]
        if len(ones) != 1:
            raise FormatError("cannot infer reference language; pass it explicitly")
        ref = ones[0]
    return PremiumTable.from_premiums(premiums, ref, source or meta.get("source", "unspecified"))


def read_table(path, reference=None, source: str | None = None) -> PremiumTable:
    with open(path, encoding="utf-8") as fh:
        return loads_table(fh.read(), reference, source)


def write_table(table: PremiumTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dumps_table(table))
