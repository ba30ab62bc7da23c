"""Pairwise premiums for any two languages, size conversion and proportion rescaling.

Premiums are resolved per language in strict order of preference:

1. the premium table;
2. parallel text pairing the language with one already in the table,
   ``BP_X = (bytes_X / bytes_partner) * BP_partner``;
3. monolingual text, through a fitted length-ratio regression and the
   bytes-per-character decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Collection, Mapping, Sequence

from .corpus import Bitext
from .errors import InsufficientDataError, UnknownLanguageError
from .metrics import byte_len, profile
from .regression import RegressionFeatures, RegressionModel, predict_length_ratio, premium_from_length_ratio
from .registry import metadata_for
from .table import PremiumTable
from .tags import LanguageTag, ScriptType, as_tag, script_type_for
from .validation import DEFAULT_THRESHOLD, select_variant

MIN_LINES_HARD = 5
MIN_LINES_SOFT = 20
METHOD_ORDER = ("table", "parallel", "regression-I", "regression-II", "regression-III")


@dataclass(frozen=True)
class NovelLanguage:
    """What is known about a language missing from the premium table.

    ``features`` lists the optional regression inputs that may be used:
    ``"script"`` and ``"family"``. By default the script (taken from the
    tag) is used, and the family when one is given.
    """

    tag: LanguageTag
    parallel: Bitext | None = None
    monolingual: Sequence[str] | None = None
    script_type: ScriptType | None = None
    family: str | None = None
    features: Collection[str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "tag", as_tag(self.tag))
        if self.script_type is not None:
            object.__setattr__(self, "script_type", ScriptType.parse(self.script_type))

    def available(self) -> set[str]:
        if self.features is not None:
            return set(self.features)
        avail = {"script"}
        if self.family:
            avail.add("family")
        return avail


@dataclass(frozen=True)
class LanguageResolution:
    tag: LanguageTag
    premium: float
    method: str
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class PairResolution:
    premium: float
    method: str
    sides: tuple[LanguageResolution, LanguageResolution]
    warnings: tuple[str, ...] = field(default=())


def _missing_hint(tag: LanguageTag) -> str:
    return (
        f"{tag} is not in the premium table. Either supply parallel text between {tag} and a "
        "language in the table, or supply monolingual text (at least "
        f"{MIN_LINES_SOFT} lines) plus its script type for a regression estimate"
    )


def _from_parallel(novel: NovelLanguage, table: PremiumTable) -> LanguageResolution:
    bitext = novel.parallel
    if bitext.lang_b == novel.tag:
        bitext = bitext.swapped()
    if bitext.lang_a != novel.tag:
        raise ValueError(f"parallel text for {novel.tag} is between {bitext.lang_a} and {bitext.lang_b}")
    partner = bitext.lang_b
    if partner not in table:
        raise UnknownLanguageError(partner, "the parallel partner language must be in the premium table")
    bytes_x = sum(byte_len(a) for a, _ in bitext.segments)
    bytes_p = sum(byte_len(b) for _, b in bitext.segments)
    if bytes_p == 0 or bytes_x == 0:
        raise InsufficientDataError(f"parallel text for {novel.tag} has an empty side")
    return LanguageResolution(novel.tag, bytes_x / bytes_p * table[partner], "parallel")


def _from_monolingual(novel: NovelLanguage, models: Mapping[str, RegressionModel],
                      reference_bytes_per_char: float, threshold: int) -> LanguageResolution:
    lines = [t for t in novel.monolingual if t]
    warns = []
    if len(lines) < MIN_LINES_HARD:
        raise InsufficientDataError(
            f"{novel.tag}: {len(lines)} non-empty lines of monolingual text; at least {MIN_LINES_HARD} required"
        )
    if len(lines) < MIN_LINES_SOFT:
        warns.append(
            f"{novel.tag}: only {len(lines)} lines of monolingual text; entropy and bytes-per-character "
            f"estimates are stable from about {MIN_LINES_SOFT} lines"
        )
    script_type = novel.script_type or script_type_for(novel.tag.script)
    if script_type is None:
        raise ValueError(f"{novel.tag}: script type unknown for script {novel.tag.iso15924}; pass script_type")
    if not models:
        raise ValueError("no regression models supplied for monolingual prediction")
    counts = next(iter(models.values())).script_counts
    variant = select_variant(novel.tag.script, novel.available(), counts, threshold)
    while variant not in models:
        # fall back towards the feature-minimal regression
        variant = {"I": "II", "II": "III"}.get(variant)
        if variant is None:
            raise ValueError("regression III model is required for monolingual prediction")
    prof = profile(novel.tag, lines, script_type, novel.family)
    feats = RegressionFeatures(
        char_entropy=prof.char_entropy,
        script_type=script_type,
        script=novel.tag.script,
        family=novel.family,
    )
    pred = predict_length_ratio(models[variant], feats)
    for pred_name, level in pred.unseen_levels:
        warns.append(f"{novel.tag}: {pred_name} level {level!r} unseen in training; treated as reference level")
    premium = premium_from_length_ratio(pred.value, prof.bytes_per_char, reference_bytes_per_char)
    return LanguageResolution(novel.tag, premium, f"regression-{variant}", tuple(warns))


def resolve_language(tag, table: PremiumTable, novel: NovelLanguage | None = None,
                     models: Mapping[str, RegressionModel] | None = None,
                     reference_bytes_per_char: float | None = None,
                     threshold: int = DEFAULT_THRESHOLD) -> LanguageResolution:
    tag = as_tag(tag)
    if tag in table:
        return LanguageResolution(tag, table[tag], "table")
    if novel is None:
        raise UnknownLanguageError(tag, _missing_hint(tag))
    if novel.parallel is not None:
        return _from_parallel(novel, table)
    if novel.monolingual is not None:
        ref_bpc = reference_bytes_per_char
        if ref_bpc is None:
            meta = metadata_for(table.reference)
            ref_bpc = meta.bytes_per_char if meta else None
        if ref_bpc is None:
            raise ValueError(
                f"bytes per character of the reference {table.reference} is unknown; "
                "pass reference_bytes_per_char (or reference text on the command line)"
            )
        return _from_monolingual(novel, models or {}, ref_bpc, threshold)
    raise UnknownLanguageError(tag, _missing_hint(tag))


def resolve_pair(lang_a, lang_b, table: PremiumTable, aux: Mapping | Sequence[NovelLanguage] | None = None,
                 models: Mapping[str, RegressionModel] | None = None,
                 reference_bytes_per_char: float | None = None,
                 threshold: int = DEFAULT_THRESHOLD) -> PairResolution:
    """Byte premium of ``lang_a`` relative to ``lang_b``.

    ``aux`` provides :class:`NovelLanguage` inputs for languages outside
    the table (a sequence, or a mapping keyed by tag). The reported method
    is the least direct one used on either side.
    """
    if aux is None:
        novel = {}
    elif isinstance(aux, Mapping):
        novel = {as_tag(k): v for k, v in aux.items()}
    else:
        novel = {n.tag: n for n in aux}
    sides = tuple(
        resolve_language(t, table, novel.get(as_tag(t)), models, reference_bytes_per_char, threshold)
        for t in (lang_a, lang_b)
    )
    a, b = sides
    premium = 1.0 if a.tag == b.tag else a.premium / b.premium
    method = max((a.method, b.method), key=METHOD_ORDER.index)
    return PairResolution(premium, method, sides, a.warnings + b.warnings)


def convert_size(size_bytes: int, from_lang, to_lang, table: PremiumTable, **resolve_kwargs) -> int:
    """Bytes of ``to_lang`` text carrying the content of ``size_bytes`` of ``from_lang`` text."""
    if size_bytes < 0:
        raise ValueError("size_bytes must be non-negative")
    bp = resolve_pair(from_lang, to_lang, table, **resolve_kwargs).premium
    return int(round(size_bytes / bp))


def rescale_proportions(proportions: Mapping, table: PremiumTable, tol: float = 1e-9) -> dict[LanguageTag, float]:
    """Divide each byte proportion by its language's premium and renormalise to sum 1."""
    props = {as_tag(k): float(v) for k, v in proportions.items()}
    unknown = [str(t) for t in props if t not in table]
    if unknown:
        raise UnknownLanguageError(", ".join(unknown), "no premium for these languages")
    if any(v < 0 for v in props.values()):
        raise ValueError("proportions must be non-negative")
    total = math.fsum(props.values())
    if abs(total - 1.0) > tol:
        raise ValueError(f"proportions must sum to 1 (within {tol:g}), got {total!r}")
    scaled = {t: v / table[t] for t, v in props.items()}
    norm = math.fsum(scaled.values())
    return {t: v / norm for t, v in scaled.items()}
