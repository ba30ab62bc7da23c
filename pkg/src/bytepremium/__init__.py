"""Byte premiums: how many more UTF-8 bytes one language needs than another for the same content."""

__version__ = "0.1.0"

from .corpus import Bitext, MultiParallelCorpus, load_bitext, load_multiparallel, sample_lines
from .compression import compressed_premiums
from .errors import BytePremiumError
from .estimation import PairwiseObservation, cross_dataset_correlation, multiparallel_premiums, pairwise_premium
from .fitting import FitConfig, FitResult, fit_premiums
from .metrics import LanguageProfile, byte_len, char_entropy, char_len, profile
from .registry import bundled_metadata, bundled_table
from .regression import (
    GroundTruthRecord,
    RegressionFeatures,
    RegressionModel,
    fit_regression,
    predict_length_ratio,
    premium_from_length_ratio,
)
from .table import PremiumTable, pairwise_lookup, rebase
from .tags import LanguageTag, ScriptType
from .tool import NovelLanguage, convert_size, rescale_proportions, resolve_pair
from .validation import ValidationReport, loo_validate, select_variant

__all__ = [
    "Bitext", "BytePremiumError", "FitConfig", "FitResult", "GroundTruthRecord", "LanguageProfile",
    "LanguageTag", "MultiParallelCorpus", "NovelLanguage", "PairwiseObservation", "PremiumTable",
    "RegressionFeatures", "RegressionModel", "ScriptType", "ValidationReport", "byte_len",
    "bundled_metadata", "bundled_table", "char_entropy", "char_len", "compressed_premiums",
    "convert_size", "cross_dataset_correlation", "fit_premiums", "fit_regression", "load_bitext",
    "load_multiparallel", "loo_validate", "multiparallel_premiums", "pairwise_lookup", "pairwise_premium",
    "predict_length_ratio", "premium_from_length_ratio", "profile", "rebase", "rescale_proportions",
    "resolve_pair", "sample_lines", "select_variant",
]
