"""Leave-one-out scoring of regression-predicted byte premiums.

Each language is held out in turn, the regression is refitted on the rest,
and the held-out premium is predicted through the bytes-per-character
decomposition using that language's own measured bytes per character.
Errors are reported separately for languages whose script is common
(shared by at least ``threshold`` languages in the full record set) and
uncommon.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Collection, Iterable, Mapping, Sequence

from .errors import InsufficientDataError
from .regression import (
    DEFAULT_CLIP,
    DEFAULT_RIDGE,
    PREDICTORS,
    VARIANTS,
    GroundTruthRecord,
    fit_regression,
    predict_length_ratio,
    premium_from_length_ratio,
)
from .tags import LanguageTag

DEFAULT_THRESHOLD = 5


def _rmse(errors: Iterable[float]) -> float | None:
    errors = list(errors)
    if not errors:
        return None
    return math.sqrt(math.fsum(e * e for e in errors) / len(errors))


@dataclass(frozen=True)
class VariantScore:
    variant: str
    per_language_errors: Mapping[LanguageTag, float]
    common: frozenset
    skipped: tuple[LanguageTag, ...] = ()

    @property
    def n_common(self) -> int:
        return sum(1 for t in self.per_language_errors if t in self.common)

    @property
    def n_uncommon(self) -> int:
        return len(self.per_language_errors) - self.n_common

    @property
    def rmse_common(self) -> float | None:
        return _rmse(e for t, e in self.per_language_errors.items() if t in self.common)

    @property
    def rmse_uncommon(self) -> float | None:
        return _rmse(e for t, e in self.per_language_errors.items() if t not in self.common)

    @property
    def rmse(self) -> float | None:
        return _rmse(self.per_language_errors.values())


@dataclass(frozen=True)
class ValidationReport:
    per_variant: Mapping[str, VariantScore]
    threshold: int = DEFAULT_THRESHOLD
    script_counts: Mapping[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"threshold": self.threshold, "script_counts": dict(self.script_counts), "variants": {}}
        for v, s in self.per_variant.items():
            out["variants"][v] = {
                "rmse_common": s.rmse_common,
                "rmse_uncommon": s.rmse_uncommon,
                "rmse": s.rmse,
                "n_common": s.n_common,
                "n_uncommon": s.n_uncommon,
                "skipped": [str(t) for t in s.skipped],
                "per_language_errors": {str(t): e for t, e in s.per_language_errors.items()},
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_table(self, digits: int = 3) -> str:
        variants = list(self.per_variant)
        label_w = 26
        head = " " * label_w + "".join(f"{v:>10}" for v in variants)

        def cell(x):
            return f"{'-':>10}" if x is None else f"{x:>10.{digits}f}"

        rows = [
            f"{'Scripts with count >=' + str(self.threshold):<{label_w}}"
            + "".join(cell(self.per_variant[v].rmse_common) for v in variants),
            f"{'Scripts with count <' + str(self.threshold):<{label_w}}"
            + "".join(cell(self.per_variant[v].rmse_uncommon) for v in variants),
        ]
        return "\n".join([head] + rows)


def script_counts(records: Iterable[GroundTruthRecord]) -> dict[str, int]:
    return dict(sorted(Counter(r.script for r in records).items()))


def predicted_premium(model, record: GroundTruthRecord) -> float:
    lr = predict_length_ratio(model, record.features()).value
    return premium_from_length_ratio(lr, record.bytes_per_char, record.ref_bytes_per_char)


def loo_validate(records: Sequence[GroundTruthRecord], variants: Collection[str] = VARIANTS,
                 script_count_threshold: int = DEFAULT_THRESHOLD, ridge: float = DEFAULT_RIDGE,
                 clip: float | None = DEFAULT_CLIP) -> ValidationReport:
    """Hold out each language, refit, and score its predicted (clipped) byte premium.

    Variant I needs a family for every training language; records without
    one are skipped for that variant and listed in ``skipped``.
    """
    records = sorted(records, key=lambda r: r.tag)
    if len(records) < 3:
        raise InsufficientDataError(f"leave-one-out needs at least 3 records, got {len(records)}")
    dupes = [t for t, c in Counter(r.tag for r in records).items() if c > 1]
    if dupes:
        raise ValueError(f"duplicate languages in records (deduplicate by source priority first): {dupes}")
    counts = script_counts(records)
    common = frozenset(r.tag for r in records if counts[r.script] >= script_count_threshold)
    per_variant = {}
    for variant in [v for v in VARIANTS if v in {str(x).upper() for x in variants}]:
        needs_family = "family" in PREDICTORS[variant]
        usable = [r for r in records if r.family or not needs_family]
        skipped = tuple(r.tag for r in records if needs_family and not r.family)
        if len(usable) < 3:
            raise InsufficientDataError(f"variant {variant}: only {len(usable)} records have the required features")
        errors = {}
        for held in usable:
            train = [r for r in usable if r.tag != held.tag]
            model = fit_regression(train, variant, ridge=ridge, clip=clip)
            assert held.tag not in model.training_languages
            errors[held.tag] = predicted_premium(model, held) - held.clipped_premium(clip)
        per_variant[variant] = VariantScore(variant, errors, common, skipped)
    return ValidationReport(per_variant, script_count_threshold, counts)


def select_variant(script: str, available: Collection[str], script_counts: Mapping[str, int],
                   threshold: int = DEFAULT_THRESHOLD) -> str:
    """Pick the regression for a new language.

    ``available`` names the optional features known for it (``"family"``,
    ``"script"``). Uncommon scripts always get III; otherwise the richest
    variant whose features are available.
    """
    script = script.lower()
    if script_counts.get(script, 0) < threshold:
        return "III"
    avail = set(available)
    if {"family", "script"} <= avail:
        return "I"
    if "script" in avail:
        return "II"
    return "III"
