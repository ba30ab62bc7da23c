"""Fit the length-ratio regressions on a synthetic ground truth, score them
with leave-one-out validation, then predict a premium from monolingual text."""

import numpy as np

from bytepremium.metrics import profile
from bytepremium.regression import (
    GroundTruthRecord,
    RegressionFeatures,
    fit_regression,
    predict_length_ratio,
    premium_from_length_ratio,
)
from bytepremium.tags import LanguageTag
from bytepremium.validation import loo_validate, select_variant

rng = np.random.default_rng(1)
scripts = [("latn", "alphabet")] * 14 + [("cyrl", "alphabet")] * 6 + [("deva", "abugida")] * 6 \
    + [("arab", "abjad")] * 5 + [("geor", "alphabet")] * 2 + [("ethi", "abugida")] * 2
effects = {"alphabet": 0.0, "abugida": 0.25, "abjad": -0.15}
bpc_range = {"latn": (1.0, 1.1), "cyrl": (1.8, 1.95), "deva": (2.3, 2.7), "arab": (1.7, 1.9),
             "geor": (2.6, 2.9), "ethi": (2.8, 2.95)}
families = ["north", "south", "east"]

records = []
for i, (script, stype) in enumerate(scripts):
    entropy = rng.uniform(4.0, 6.5)
    length_ratio = 0.1 + 0.17 * entropy + effects[stype] + rng.normal(0, 0.05)
    bpc = rng.uniform(*bpc_range[script])
    records.append(GroundTruthRecord(
        tag=LanguageTag("q" + chr(97 + i // 26) + chr(97 + i % 26), script), length_ratio=length_ratio, byte_premium=bpc * length_ratio,
        bytes_per_char=bpc, char_entropy=entropy, script_type=stype, family=families[i % 3],
        reference_bytes_per_char=1.0,
    ))

models = {v: fit_regression(records, v) for v in ("I", "II", "III")}
for name, value in models["III"].coefficients().items():
    print(f"III {name}: {value:+.4f}")

report = loo_validate(records)
print()
print(report.format_table())

# a new Latin-script language known only from a few lines of text
text = [
    "ndi ka nwa ne mbe laka nze ndo",
    "mbe ka ndi la nwa mba ne laka",
    "ne ndo ka nze mbe ndi la nwa",
] * 8
prof = profile(LanguageTag("zzz", "latn"), text, "alphabet")
variant = select_variant("latn", {"script"}, models["II"].script_counts)
pred = predict_length_ratio(models[variant], RegressionFeatures(prof.char_entropy, "alphabet", "latn"))
premium = premium_from_length_ratio(pred.value, prof.bytes_per_char, 1.0)
print(f"\nzzz_latn: entropy {prof.char_entropy:.3f}, variant {variant}, predicted premium {premium:.3f}")
