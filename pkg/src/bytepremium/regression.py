"""Linear regressions predicting a language's length ratio from monolingual features.

The length ratio is ``chars_A / chars_ref`` for content-matched text. Given a
predicted length ratio and measured bytes-per-character for both languages,
the byte premium follows as ``bpc_A * length_ratio / bpc_ref``.

Three nested feature sets are supported:

====  =============================================================
I     character entropy, script type, script, language family
II    character entropy, script type, script
III   character entropy, script type
====  =============================================================

Categoricals are one-hot encoded with the most frequent level dropped.
Script is nested in script type: inside each script type the most frequent
script is the dropped level, so a script coefficient is an offset from its
script type's effect. Ties on frequency go to the alphabetically first level.
"""

from __future__ import annotations

import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import FeatureMissingError, InsufficientDataError, RankDeficiencyError
from .tags import LanguageTag, ScriptType, as_tag

VARIANTS = ("I", "II", "III")
PREDICTORS = {
    "I": ("script_type", "script", "family"),
    "II": ("script_type", "script"),
    "III": ("script_type",),
}
DEFAULT_CLIP = 4.0
DEFAULT_RIDGE = 1e-8
MIN_LENGTH_RATIO = 1e-3
MODEL_FORMAT = "bytepremium.regression"
MODEL_VERSION = 1
SOURCE_PRIORITY = ("NLLB", "FLORES", "Bible")


class UnseenLevelWarning(UserWarning):
    pass


def _check_variant(variant: str) -> str:
    v = str(variant).upper()
    if v not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return v


@dataclass(frozen=True)
class RegressionFeatures:
    char_entropy: float
    script_type: ScriptType
    script: str | None = None
    family: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "script_type", ScriptType.parse(self.script_type))
        if self.script:
            object.__setattr__(self, "script", self.script.lower())

    def get(self, predictor: str):
        return getattr(self, predictor)


@dataclass(frozen=True)
class GroundTruthRecord:
    """Measured length ratio, byte premium and monolingual features for one language.

    ``byte_premium`` is the unclipped measurement; :meth:`clipped_premium`
    gives the value used for fitting and scoring.
    """

    tag: LanguageTag
    length_ratio: float
    byte_premium: float
    bytes_per_char: float
    char_entropy: float
    script_type: ScriptType
    family: str | None = None
    source_dataset: str = "FLORES"
    reference_bytes_per_char: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "tag", as_tag(self.tag))
        object.__setattr__(self, "script_type", ScriptType.parse(self.script_type))
        for name in ("length_ratio", "byte_premium", "bytes_per_char"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{self.tag}: {name} must be positive, got {v}")
        if self.family == "":
            object.__setattr__(self, "family", None)

    @property
    def script(self) -> str:
        return self.tag.script

    @property
    def ref_bytes_per_char(self) -> float:
        """Reference-language bytes per char; derived from the premium decomposition when not stored."""
        if self.reference_bytes_per_char is not None:
            return self.reference_bytes_per_char
        return self.bytes_per_char * self.length_ratio / self.byte_premium

    def clipped_premium(self, clip: float | None = DEFAULT_CLIP) -> float:
        if clip is None:
            return self.byte_premium
        return min(self.byte_premium, clip)

    def target_length_ratio(self, clip: float | None = DEFAULT_CLIP) -> float:
        """Length ratio scaled down by the same factor the premium was clipped by."""
        if clip is None or self.byte_premium <= clip:
            return self.length_ratio
        return self.length_ratio * clip / self.byte_premium

    def features(self) -> RegressionFeatures:
        return RegressionFeatures(self.char_entropy, self.script_type, self.script, self.family)


@dataclass(frozen=True)
class LengthRatioPrediction:
    value: float
    variant: str
    unseen_levels: tuple[tuple[str, str], ...] = ()

    @property
    def warning(self) -> bool:
        return bool(self.unseen_levels)

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class RegressionModel:
    variant: str
    intercept: float
    entropy_coef: float
    level_maps: Mapping[str, Mapping[str, float]]
    reference_levels: Mapping[str, tuple[str, ...]]
    training_languages: tuple[LanguageTag, ...]
    script_counts: Mapping[str, int] = field(default_factory=dict)
    ridge: float = DEFAULT_RIDGE
    clip: float | None = DEFAULT_CLIP
    target: str = "length_ratio relative to reference language"

    def known_levels(self, predictor: str) -> set[str]:
        return set(self.level_maps.get(predictor, {})) | set(self.reference_levels.get(predictor, ()))

    def coefficients(self) -> dict[str, float]:
        """Flat ``name -> value`` view, e.g. ``{"intercept": .., "script=cyrl": ..}``."""
        out = {"intercept": self.intercept, "char_entropy": self.entropy_coef}
        for pred in PREDICTORS[self.variant]:
            for level, coef in self.level_maps.get(pred, {}).items():
                out[f"{pred}={level}"] = coef
        return out

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "variant": self.variant,
            "target": self.target,
            "intercept": self.intercept,
            "entropy_coef": self.entropy_coef,
            "level_maps": {k: dict(v) for k, v in self.level_maps.items()},
            "reference_levels": {k: list(v) for k, v in self.reference_levels.items()},
            "training_languages": [str(t) for t in self.training_languages],
            "script_counts": dict(self.script_counts),
            "ridge": self.ridge,
            "clip": self.clip,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> RegressionModel:
        if d.get("format") != MODEL_FORMAT:
            raise ValueError(f"not a regression model document (format={d.get('format')!r})")
        if d.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported model version {d.get('version')!r}")
        return cls(
            variant=_check_variant(d["variant"]),
            intercept=float(d["intercept"]),
            entropy_coef=float(d["entropy_coef"]),
            level_maps={k: {lvl: float(c) for lvl, c in v.items()} for k, v in d["level_maps"].items()},
            reference_levels={k: tuple(v) for k, v in d["reference_levels"].items()},
            training_languages=tuple(as_tag(t) for t in d["training_languages"]),
            script_counts={k: int(v) for k, v in d.get("script_counts", {}).items()},
            ridge=float(d.get("ridge", DEFAULT_RIDGE)),
            clip=d.get("clip", DEFAULT_CLIP),
            target=d.get("target", "length_ratio relative to reference language"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> RegressionModel:
        return cls.from_dict(json.loads(text))


def _most_frequent(levels: Sequence[str]) -> str:
    counts = Counter(levels)
    return min(counts, key=lambda lvl: (-counts[lvl], lvl))


def _require(records: Sequence[GroundTruthRecord], variant: str) -> None:
    for r in records:
        if "family" in PREDICTORS[variant] and not r.family:
            raise FeatureMissingError(r.tag, "family")


@dataclass
class _Encoding:
    """Column layout of the design matrix for one fitted variant."""

    variant: str
    columns: list[tuple[str, str]]  # (predictor, level) for each dummy column
    reference_levels: dict[str, tuple[str, ...]]

    @classmethod
    def build(cls, records: Sequence[GroundTruthRecord], variant: str) -> _Encoding:
        columns: list[tuple[str, str]] = []
        refs: dict[str, tuple[str, ...]] = {}
        preds = PREDICTORS[variant]
        types = [r.script_type.value for r in records]
        ref_type = _most_frequent(types)
        refs["script_type"] = (ref_type,)
        columns += [("script_type", t) for t in sorted(set(types)) if t != ref_type]
        if "script" in preds:
            by_script: dict[str, Counter] = {}
            for r in records:
                by_script.setdefault(r.script, Counter())[r.script_type.value] += 1
            home = {s: min(c, key=lambda t: (-c[t], t)) for s, c in by_script.items()}
            ref_scripts = []
            for t in sorted(set(home.values())):
                members = [r.script for r in records if home[r.script] == t]
                ref_scripts.append(_most_frequent(members))
            refs["script"] = tuple(sorted(ref_scripts))
            columns += [("script", s) for s in sorted(home) if s not in ref_scripts]
        if "family" in preds:
            fams = [r.family for r in records]
            ref_fam = _most_frequent(fams)
            refs["family"] = (ref_fam,)
            columns += [("family", f) for f in sorted(set(fams)) if f != ref_fam]
        return cls(variant, columns, refs)

    def row(self, feats: RegressionFeatures) -> np.ndarray:
        x = np.zeros(2 + len(self.columns))
        x[0] = 1.0
        x[1] = feats.char_entropy
        for j, (pred, level) in enumerate(self.columns, start=2):
            value = feats.get(pred)
            if isinstance(value, ScriptType):
                value = value.value
            if value == level:
                x[j] = 1.0
        return x


def design_matrix(records: Sequence[GroundTruthRecord], variant: str):
    """Design matrix, target vector and column names for ``records`` under ``variant``."""
    variant = _check_variant(variant)
    _require(records, variant)
    enc = _Encoding.build(records, variant)
    X = np.vstack([enc.row(r.features()) for r in records])
    names = ["intercept", "char_entropy"] + [f"{p}={lvl}" for p, lvl in enc.columns]
    return X, enc, names


def fit_regression(records: Sequence[GroundTruthRecord], variant: str, ridge: float = DEFAULT_RIDGE,
                   clip: float | None = DEFAULT_CLIP) -> RegressionModel:
    """Least-squares fit of length ratios for one variant.

    ``ridge`` is added to the diagonal of the normal equations for every
    coefficient except the intercept. With ``ridge=0`` a rank-deficient
    design raises :class:`RankDeficiencyError`.
    """
    variant = _check_variant(variant)
    if ridge < 0:
        raise ValueError("ridge must be non-negative")
    records = list(records)
    if len(records) < 2:
        raise InsufficientDataError(f"need at least 2 records to fit a regression, got {len(records)}")
    X, enc, _ = design_matrix(records, variant)
    y = np.array([r.target_length_ratio(clip) for r in records])
    if ridge == 0:
        rank = np.linalg.matrix_rank(X)
        if rank < X.shape[1]:
            raise RankDeficiencyError(
                f"variant {variant}: design has rank {rank} < {X.shape[1]} columns "
                f"({len(records)} records); use a small positive ridge"
            )
        beta = np.linalg.lstsq(X, y, rcond=None)[0]
    else:
        A = X.T @ X
        penalty = np.full(X.shape[1], ridge)
        penalty[0] = 0.0
        A[np.diag_indices_from(A)] += penalty
        beta = np.linalg.solve(A, X.T @ y)

    level_maps: dict[str, dict[str, float]] = {p: {} for p in PREDICTORS[variant]}
    for (pred, level), coef in zip(enc.columns, beta[2:]):
        level_maps[pred][level] = float(coef)
    return RegressionModel(
        variant=variant,
        intercept=float(beta[0]),
        entropy_coef=float(beta[1]),
        level_maps=level_maps,
        reference_levels=enc.reference_levels,
        training_languages=tuple(r.tag for r in records),
        script_counts=dict(sorted(Counter(r.script for r in records).items())),
        ridge=ridge,
        clip=clip,
    )


def predict_length_ratio(model: RegressionModel, features: RegressionFeatures,
                         warn: bool = False) -> LengthRatioPrediction:
    """Apply a fitted model.

    Levels never seen in training contribute nothing (same as the dropped
    reference level) and are listed in ``unseen_levels``.
    """
    value = model.intercept + model.entropy_coef * features.char_entropy
    unseen = []
    for pred in PREDICTORS[model.variant]:
        level = features.get(pred)
        if isinstance(level, ScriptType):
            level = level.value
        if level is None:
            raise FeatureMissingError("<features>", pred)
        coefs = model.level_maps.get(pred, {})
        if level in coefs:
            value += coefs[level]
        elif level not in model.known_levels(pred):
            unseen.append((pred, level))
    if unseen and warn:
        warnings.warn(f"unseen levels {unseen} predicted as reference level", UnseenLevelWarning, stacklevel=2)
    return LengthRatioPrediction(max(value, MIN_LENGTH_RATIO), model.variant, tuple(unseen))


def premium_from_length_ratio(length_ratio: float, bpc_target: float, bpc_reference: float) -> float:
    """``bytes/char (target) * chars_target/chars_ref * chars/byte (reference)``."""
    for name, v in (("length_ratio", length_ratio), ("bpc_target", bpc_target), ("bpc_reference", bpc_reference)):
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")
    return bpc_target * length_ratio / bpc_reference
