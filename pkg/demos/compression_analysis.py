"""How much of a byte premium survives gzip?

A column that spells every letter with a 4-byte code point is four times
larger raw, but the compressor mostly absorbs the redundant bytes.
"""

import random

from bytepremium.compression import compressed_premiums, compressed_sizes
from bytepremium.corpus import multiparallel_from_columns
from bytepremium.estimation import multiparallel_premiums

rnd = random.Random(3)
words = "river stone cloud morning harvest lantern window market".split()
english = [" ".join(rnd.choice(words) for _ in range(rnd.randint(4, 10))) for _ in range(500)]
wide = ["".join(chr(0x10000 + ord(c)) for c in line) for line in english]
shuffled = [" ".join(rnd.sample(line.split(), len(line.split()))) for line in english]

corpus = multiparallel_from_columns({"eng_latn": english, "xwd_latn": wide, "xsh_latn": shuffled})
raw = multiparallel_premiums(corpus, "eng_latn")
comp = compressed_premiums(corpus, "eng_latn")
sizes = compressed_sizes(corpus)
for tag in corpus.languages:
    print(f"{tag}: raw {raw[tag]:.3f}  compressed {comp[tag]:.3f}  ({sizes[tag]} gzip bytes)")
