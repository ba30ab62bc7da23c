"""Runbook for the published correlation and validation numbers.

Needs corpora that do not ship with the package:

    python3 demos/reproduce_reported_numbers.py FLORES.tsv [RECORDS.csv]

FLORES.tsv is a multi-parallel TSV whose header row lists lang_script tags
(one column per language, one sentence per row). Its premiums are
correlated with the bundled table; expect r near 0.919.

RECORDS.csv is a ground-truth file as written by
``bytepremium compute-multiparallel --records`` (and, for bitext-derived
languages, ``groundtruth.records_from_bitexts``), merged with
``groundtruth.merge_by_priority`` so each language appears once. Expect a
leave-one-out RMSE near 0.261 for variant I on common scripts and near
0.589 for variant III on uncommon scripts.

Setting BYTEPREMIUM_FLORES_TSV and BYTEPREMIUM_RECORDS_CSV runs the same
checks inside the acceptance suite.
"""

import sys

from bytepremium import bundled_table
from bytepremium.corpus import load_multiparallel
from bytepremium.estimation import cross_dataset_correlation, multiparallel_premiums
from bytepremium.groundtruth import read_records
from bytepremium.validation import loo_validate

if len(sys.argv) < 2:
    sys.exit(__doc__)

flores = multiparallel_premiums(load_multiparallel(sys.argv[1]), "eng_latn")
shared = set(flores) & set(bundled_table().premiums)
r = cross_dataset_correlation(bundled_table().premiums, flores)
print(f"bundled vs FLORES premiums over {len(shared)} languages: r = {r:.3f} (reported 0.919)")

if len(sys.argv) > 2:
    report = loo_validate(read_records(sys.argv[2]))
    print(report.format_table())
    print(f"variant I common: {report.per_variant['I'].rmse_common:.3f} (reported 0.261)")
    print(f"variant III uncommon: {report.per_variant['III'].rmse_uncommon:.3f} (reported 0.589)")
