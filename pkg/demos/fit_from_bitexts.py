"""Estimate per-language premiums from a handful of pairwise bitexts.

Three made-up languages are derived from English sentences by simple
transforms with known byte inflation, so the fitted premiums can be
checked by eye.
"""

import random

from bytepremium.corpus import Bitext
from bytepremium.estimation import pairwise_premium
from bytepremium.fitting import FitConfig, fit_premiums
from bytepremium.tags import LanguageTag

rnd = random.Random(0)
words = "the quick brown fox jumps over a lazy dog while seven wizards quietly hex".split()
english = [" ".join(rnd.choice(words) for _ in range(rnd.randint(5, 14))) for _ in range(300)]

# ASCII letters mapped into Cyrillic (2 bytes each), Devanagari-like (3 bytes) and doubled vowels
to_cyrl = str.maketrans({c: chr(0x430 + ord(c) - 97) for c in "abcdefghijklmnopqrstuvwxyz"})
to_deva = str.maketrans({c: chr(0x915 + ord(c) - 97) for c in "abcdefghijklmnopqrstuvwxyz"})
languages = {
    LanguageTag("eng", "latn"): english,
    LanguageTag("xcy", "cyrl"): [s.translate(to_cyrl) for s in english],
    LanguageTag("xde", "deva"): [s.translate(to_deva) for s in english],
    LanguageTag("xvo", "latn"): [s.replace("a", "aa").replace("o", "oo") for s in english],
}

# only some pairs are available, as with real bitexts
pairs = [("xcy", "eng"), ("eng", "xde"), ("xde", "xcy"), ("xvo", "eng"), ("xvo", "xcy")]
tags = {t.language: t for t in languages}
observations = []
for a, b in pairs:
    ta, tb = tags[a], tags[b]
    obs = pairwise_premium(Bitext(ta, tb, tuple(zip(languages[ta], languages[tb]))))
    observations.append(obs)
    print(f"{ta} / {tb}: {obs.premium:.4f} over {obs.n_segments} segments")

for mode in ("log-ls", "raw-mse"):
    result = fit_premiums(observations, "eng_latn", FitConfig(mode=mode))
    print(f"\n{mode}: objective {result.objective:.3g} after {result.iterations} iterations")
    for tag in result.table.languages:
        print(f"  {tag}: {result.table[tag]:.4f}")
