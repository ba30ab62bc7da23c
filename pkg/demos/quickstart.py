"""Look up premiums, convert sizes and rebalance a data mix with the bundled table."""

from bytepremium import bundled_table
from bytepremium.table import pairwise_lookup, rebase
from bytepremium.tool import convert_size, rescale_proportions

table = bundled_table()
print(f"{len(table.languages)} languages, reference {table.reference}")

# premium of Burmese relative to English: bytes needed for the same content
print("mya_mymr vs eng_latn:", table["mya_mymr"])

# any pair works through the ratio of per-language premiums
print("kat_geor vs fra_latn:", pairwise_lookup(table, "kat_geor", "fra_latn"))
print("fra_latn vs kat_geor:", pairwise_lookup(table, "fra_latn", "kat_geor"))

# a gigabyte of Georgian carries about as much content as this much English
print("1 GB kat_geor ->", convert_size(10**9, "kat_geor", "eng_latn", table), "bytes eng_latn")

# the choice of reference does not change pairwise values
french = rebase(table, "fra_latn")
print("rebased on French, kat_geor vs fra_latn:", french["kat_geor"])

# a byte-balanced mix over-represents content in low-premium languages
mix = {"eng_latn": 0.25, "hin_deva": 0.25, "mya_mymr": 0.25, "kea_latn": 0.25}
for tag, share in sorted(rescale_proportions(mix, table).items()):
    print(f"  {tag}: {share:.3f} of content")
