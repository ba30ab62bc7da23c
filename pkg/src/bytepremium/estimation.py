"""Measuring byte premiums from parallel text.

Two estimators, deliberately kept apart:

* :func:`pairwise_premium` averages per-segment byte ratios over a bitext.
  Mean-of-ratios is not reciprocal: ``pairwise(A, B) * pairwise(B, A) >= 1``.
* :func:`multiparallel_premiums` divides total bytes per column by the
  reference column's total, so its output is exactly ratio-consistent.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .corpus import Bitext, MultiParallelCorpus
from .errors import DegenerateCorpusError, InsufficientDataError, InsufficientOverlapError
from .metrics import byte_len, char_len
from .tags import LanguageTag, as_tag

log = logging.getLogger(__name__)

SKIP_WARN_FRACTION = 0.10

_MEASURES = {"bytes": byte_len, "chars": char_len}


@dataclass(frozen=True)
class PairwiseObservation:
    lang_a: LanguageTag
    lang_b: LanguageTag
    premium: float
    n_segments: int = 1
    n_skipped: int = 0

    def __post_init__(self):
        if not (self.premium > 0 and math.isfinite(self.premium)):
            raise ValueError(f"premium must be positive and finite, got {self.premium}")
        if self.n_segments < 1:
            raise ValueError("n_segments must be >= 1")


def _measure(name):
    try:
        return _MEASURES[name]
    except KeyError:
        raise ValueError(f"measure must be one of {sorted(_MEASURES)}") from None


def pairwise_premium(bitext: Bitext, measure: str = "bytes") -> PairwiseObservation:
    """Mean over segments of ``size(a_i) / size(b_i)``.

    Segments with an empty side are skipped; a warning is logged when more
    than 10% are skipped. With ``measure="chars"`` this gives the pairwise
    length ratio instead.
    """
    size = _measure(measure)
    ratios = []
    skipped = 0
    for a, b in bitext.segments:
        if not a or not b:
            skipped += 1
            continue
        ratios.append(size(a) / size(b))
    if not ratios:
        raise InsufficientDataError(
            f"{bitext.lang_a}/{bitext.lang_b}: no usable segments ({skipped} skipped with an empty side)"
        )
    if skipped > SKIP_WARN_FRACTION * len(bitext.segments):
        log.warning("%s/%s: skipped %d of %d segments with an empty side",
                    bitext.lang_a, bitext.lang_b, skipped, len(bitext.segments))
    premium = math.fsum(ratios) / len(ratios)
    return PairwiseObservation(bitext.lang_a, bitext.lang_b, premium, len(ratios), skipped)


def column_totals(corpus: MultiParallelCorpus, measure: str = "bytes") -> dict[LanguageTag, int]:
    size = _measure(measure)
    totals = {}
    for j, tag in enumerate(corpus.languages):
        totals[tag] = sum(size(row[j]) for row in corpus.rows)
    return totals


def multiparallel_premiums(corpus: MultiParallelCorpus, reference, measure: str = "bytes") -> dict[LanguageTag, float]:
    """Per-language ratio of total bytes to the reference column's total bytes."""
    reference = as_tag(reference)
    corpus.index(reference)
    totals = column_totals(corpus, measure)
    ref_total = totals[reference]
    if ref_total == 0:
        raise DegenerateCorpusError(f"reference {reference} has zero total {measure}")
    out = {tag: total / ref_total for tag, total in totals.items()}
    out[reference] = 1.0
    return out


def cross_dataset_correlation(premiums_x: Mapping, premiums_y: Mapping) -> float:
    """Pearson's r over the languages present in both maps."""
    x = {as_tag(k): v for k, v in premiums_x.items()}
    y = {as_tag(k): v for k, v in premiums_y.items()}
    keys = sorted(set(x) & set(y))
    if len(keys) < 3:
        raise InsufficientOverlapError(f"need at least 3 shared languages, found {len(keys)}")
    xs = np.array([x[k] for k in keys], dtype=float)
    ys = np.array([y[k] for k in keys], dtype=float)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    denom = math.sqrt(float(dx @ dx) * float(dy @ dy))
    if denom == 0:
        raise InsufficientDataError("correlation undefined: one of the premium sets is constant")
    return float(np.clip((dx @ dy) / denom, -1.0, 1.0))


# -- observation files ---------------------------------------------------------

OBSERVATION_FIELDS = ("lang_a", "lang_b", "premium", "n_segments")


def write_observations(observations: Iterable[PairwiseObservation], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(OBSERVATION_FIELDS)
        for o in observations:
            w.writerow([str(o.lang_a), str(o.lang_b), repr(float(o.premium)), o.n_segments])


def read_observations(path) -> list[PairwiseObservation]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        missing = set(OBSERVATION_FIELDS[:3]) - set(rows.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        out = []
        for r in rows:
            n = r.get("n_segments") or "1"
            out.append(PairwiseObservation(as_tag(r["lang_a"]), as_tag(r["lang_b"]), float(r["premium"]), int(n)))
    return out
