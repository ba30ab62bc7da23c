"""Building regression ground truth from parallel corpora, and its CSV format."""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import replace
from typing import Callable, Iterable, Mapping, Sequence

from .corpus import Bitext, MultiParallelCorpus
from .errors import FormatError
from .estimation import column_totals, pairwise_premium
from .fitting import FitConfig, fit_premiums
from .metrics import char_entropy
from .regression import SOURCE_PRIORITY, GroundTruthRecord
from .tags import LanguageTag, ScriptType, as_tag, script_type_for

RECORD_FIELDS = (
    "language", "length_ratio", "byte_premium", "bytes_per_char", "char_entropy",
    "script_type", "family", "source_dataset", "reference_bytes_per_char",
)


def _script_type(tag: LanguageTag, script_types: Mapping | None) -> ScriptType | None:
    if script_types and tag in script_types:
        return ScriptType.parse(script_types[tag])
    return script_type_for(tag.script)


def records_from_multiparallel(corpus: MultiParallelCorpus, reference, source_dataset: str,
                               script_types: Mapping | None = None,
                               families: Mapping | None = None,
                               exclude_whitespace: bool = False) -> list[GroundTruthRecord]:
    """One record per column: total-byte and total-char ratios to the reference column.

    Languages whose script type cannot be determined are left out.
    """
    reference = as_tag(reference)
    corpus.index(reference)
    script_types = {as_tag(k): v for k, v in (script_types or {}).items()}
    families = {as_tag(k): v for k, v in (families or {}).items()}
    nbytes = column_totals(corpus, "bytes")
    nchars = column_totals(corpus, "chars")
    ref_bpc = nbytes[reference] / nchars[reference]
    out = []
    for tag in corpus.languages:
        st = _script_type(tag, script_types)
        if st is None or nchars[tag] == 0:
            continue
        out.append(GroundTruthRecord(
            tag=tag,
            length_ratio=1.0 if tag == reference else nchars[tag] / nchars[reference],
            byte_premium=1.0 if tag == reference else nbytes[tag] / nbytes[reference],
            bytes_per_char=nbytes[tag] / nchars[tag],
            char_entropy=char_entropy(corpus.column(tag), exclude_whitespace),
            script_type=st,
            family=families.get(tag),
            source_dataset=source_dataset,
            reference_bytes_per_char=ref_bpc,
        ))
    return out


def records_from_bitexts(bitexts: Sequence[Bitext], reference, source_dataset: str = "NLLB",
                         script_types: Mapping | None = None,
                         families: Mapping | None = None,
                         config: FitConfig | None = None,
                         exclude_whitespace: bool = False) -> list[GroundTruthRecord]:
    """Pairwise corpora: fit premiums and length ratios separately over all pairs.

    Monolingual statistics for each language pool every side of every
    bitext it appears in.
    """
    reference = as_tag(reference)
    script_types = {as_tag(k): v for k, v in (script_types or {}).items()}
    families = {as_tag(k): v for k, v in (families or {}).items()}
    byte_obs = [pairwise_premium(b, "bytes") for b in bitexts]
    char_obs = [pairwise_premium(b, "chars") for b in bitexts]
    bp = fit_premiums(byte_obs, reference, config).table
    lr = fit_premiums(char_obs, reference, config).table
    texts: dict[LanguageTag, list[str]] = defaultdict(list)
    for b in bitexts:
        texts[b.lang_a].extend(a for a, _ in b.segments)
        texts[b.lang_b].extend(t for _, t in b.segments)
    bpc = {}
    for tag, ts in texts.items():
        nb = sum(len(t.encode("utf-8")) for t in ts)
        nc = sum(len(t) for t in ts)
        bpc[tag] = nb / nc
    out = []
    for tag in bp.languages:
        st = _script_type(tag, script_types)
        if st is None:
            continue
        out.append(GroundTruthRecord(
            tag=tag,
            length_ratio=lr[tag],
            byte_premium=bp[tag],
            bytes_per_char=bpc[tag],
            char_entropy=char_entropy(texts[tag], exclude_whitespace),
            script_type=st,
            family=families.get(tag),
            source_dataset=source_dataset,
            reference_bytes_per_char=bpc[reference],
        ))
    return out


def merge_by_priority(*record_sets: Iterable[GroundTruthRecord],
                      priority: Sequence[str] = SOURCE_PRIORITY) -> list[GroundTruthRecord]:
    """Keep one record per language, preferring sources earlier in ``priority``."""
    rank = {name.lower(): i for i, name in enumerate(priority)}
    best: dict[LanguageTag, GroundTruthRecord] = {}
    for records in record_sets:
        for r in records:
            cur = best.get(r.tag)
            if cur is None or rank.get(r.source_dataset.lower(), len(rank)) < rank.get(cur.source_dataset.lower(), len(rank)):
                best[r.tag] = r
    return [best[t] for t in sorted(best)]


def attach(records: Iterable[GroundTruthRecord], families: Mapping | None = None,
           lookup: Callable[[LanguageTag], str | None] | None = None) -> list[GroundTruthRecord]:
    """Fill in missing families from a mapping or a lookup function."""
    fams = {as_tag(k): v for k, v in (families or {}).items()}
    out = []
    for r in records:
        fam = r.family or fams.get(r.tag) or (lookup(r.tag) if lookup else None)
        out.append(replace(r, family=fam) if fam != r.family else r)
    return out


def _opt_float(text: str):
    text = (text or "").strip()
    return float(text) if text else None


def write_records(records: Iterable[GroundTruthRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_FIELDS)
        for r in records:
            w.writerow([
                str(r.tag), repr(r.length_ratio), repr(r.byte_premium), repr(r.bytes_per_char),
                repr(r.char_entropy), r.script_type.value, r.family or "", r.source_dataset,
                "" if r.reference_bytes_per_char is None else repr(r.reference_bytes_per_char),
            ])


def read_records(path) -> list[GroundTruthRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        required = set(RECORD_FIELDS[:6])
        missing = required - set(reader.fieldnames or ())
        if missing:
            raise FormatError(f"{path}: missing columns {sorted(missing)}")
        out = []
        for i, row in enumerate(reader, start=2):
            try:
                out.append(GroundTruthRecord(
                    tag=as_tag(row["language"]),
                    length_ratio=float(row["length_ratio"]),
                    byte_premium=float(row["byte_premium"]),
                    bytes_per_char=float(row["bytes_per_char"]),
                    char_entropy=float(row["char_entropy"]),
                    script_type=ScriptType.parse(row["script_type"]),
                    family=(row.get("family") or "").strip() or None,
                    source_dataset=(row.get("source_dataset") or "FLORES").strip(),
                    reference_bytes_per_char=_opt_float(row.get("reference_bytes_per_char", "")),
                ))
            except ValueError as exc:
                raise FormatError(f"{path}: row {i}: {exc}") from None
    return out
