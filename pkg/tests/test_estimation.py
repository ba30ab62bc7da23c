import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bytepremium.corpus import Bitext, multiparallel_from_columns
from bytepremium.errors import (
    DegenerateCorpusError,
    InsufficientDataError,
    InsufficientOverlapError,
    UnknownLanguageError,
)
from bytepremium.estimation import (
    PairwiseObservation,
    cross_dataset_correlation,
    multiparallel_premiums,
    pairwise_premium,
    read_observations,
    write_observations,
)
from bytepremium.tags import LanguageTag

A, B = LanguageTag("aaa", "latn"), LanguageTag("bbb", "latn")
segment = st.text(st.characters(blacklist_categories=("Cs",)), min_size=1, max_size=30)


def bitext(pairs):
    return Bitext(A, B, tuple(pairs))


def test_pairwise_examples():
    assert pairwise_premium(bitext([("aa", "a"), ("aaaa", "aa")])).premium == 2.0
    assert pairwise_premium(bitext([("abc", "ab"), ("a", "ab")])).premium == 1.0
    assert pairwise_premium(bitext([("日本", "ab")])).premium == 3.0


def test_pairwise_chars_measure():
    obs = pairwise_premium(bitext([("日本", "ab")]), measure="chars")
    assert obs.premium == 1.0


def test_pairwise_skips_empty_sides(caplog):
    with caplog.at_level(logging.WARNING):
        obs = pairwise_premium(bitext([("aa", "a"), ("", "a"), ("a", "")]))
    assert obs.premium == 2.0
    assert obs.n_segments == 1
    assert obs.n_skipped == 2
    assert "skipped 2 of 3" in caplog.text


def test_pairwise_no_usable_segments():
    with pytest.raises(InsufficientDataError, match="2 skipped"):
        pairwise_premium(bitext([("", "a"), ("a", "")]))


@given(st.lists(st.tuples(segment, segment), min_size=1, max_size=20))
def test_pairwise_properties(pairs):
    bt = bitext(pairs)
    p = pairwise_premium(bt).premium
    assert pairwise_premium(bitext([(a, a) for a, _ in pairs])).premium == 1.0
    assert pairwise_premium(bitext(pairs * 2)).premium == pytest.approx(p, rel=1e-12)
    # mean-of-ratios: AM-HM inequality
    assert p * pairwise_premium(bt.swapped()).premium >= 1.0 - 1e-12


def test_am_hm_equality_only_when_ratios_equal():
    unequal = bitext([("aa", "a"), ("a", "a")])
    assert pairwise_premium(unequal).premium * pairwise_premium(unequal.swapped()).premium > 1.0


def test_multiparallel_examples():
    same = multiparallel_from_columns({"eng_latn": ["ab", "c"], "fra_latn": ["ab", "c"]})
    assert set(multiparallel_premiums(same, "eng_latn").values()) == {1.0}
    two = multiparallel_from_columns({"eng_latn": ["ab", "ab"], "fra_latn": ["abcd", "abcd"]})
    assert multiparallel_premiums(two, "eng_latn")[LanguageTag("fra", "latn")] == 2.0


def test_multiparallel_errors():
    c = multiparallel_from_columns({"eng_latn": ["", ""], "fra_latn": ["a", "b"]})
    with pytest.raises(UnknownLanguageError):
        multiparallel_premiums(c, "deu_latn")
    with pytest.raises(DegenerateCorpusError):
        multiparallel_premiums(c, "eng_latn")


@given(st.lists(st.tuples(segment, segment, segment), min_size=1, max_size=10))
def test_multiparallel_ratio_consistency(rows):
    tags = ["aaa_latn", "bbb_latn", "ccc_latn"]
    c = multiparallel_from_columns({t: [r[i] for r in rows] for i, t in enumerate(tags)})
    by = {t: multiparallel_premiums(c, t) for t in tags}
    for ref in tags:
        for x in tags:
            for y in tags:
                lhs = by[ref][LanguageTag.parse(x)] / by[ref][LanguageTag.parse(y)]
                assert lhs == pytest.approx(by[y][LanguageTag.parse(x)], rel=1e-12)
    # changing the reference scales everything by one constant
    k = {t: by["bbb_latn"][t] / by["aaa_latn"][t] for t in by["aaa_latn"]}
    assert max(k.values()) == pytest.approx(min(k.values()), rel=1e-12)


def test_correlation_examples():
    x = {"aaa_latn": 1.0, "bbb_latn": 2.0, "ccc_latn": 3.0}
    assert cross_dataset_correlation(x, x) == pytest.approx(1.0, abs=1e-15)
    assert cross_dataset_correlation(x, {k: 2 * v for k, v in x.items()}) == pytest.approx(1.0, abs=1e-15)
    y = {"aaa_latn": 2.0, "bbb_latn": 3.0, "ccc_latn": 5.0, "zzz_latn": 9.0}
    # 3 / sqrt(2 * 14/3), from the exact sums of squares
    assert cross_dataset_correlation(x, y) == pytest.approx(0.9819805060619656, abs=1e-12)


def test_correlation_needs_overlap():
    with pytest.raises(InsufficientOverlapError):
        cross_dataset_correlation({"aaa_latn": 1, "bbb_latn": 2}, {"aaa_latn": 1, "bbb_latn": 3})


def test_observation_csv_roundtrip(tmp_path):
    obs = [PairwiseObservation(A, B, 1.2345678901234567, 100), PairwiseObservation(B, A, 0.81, 3)]
    path = tmp_path / "obs.csv"
    write_observations(obs, path)
    back = read_observations(path)
    assert [(o.lang_a, o.lang_b, o.premium, o.n_segments) for o in back] == \
        [(o.lang_a, o.lang_b, o.premium, o.n_segments) for o in obs]


def test_observation_validation():
    with pytest.raises(ValueError):
        PairwiseObservation(A, B, 0.0, 1)
    with pytest.raises(ValueError):
        PairwiseObservation(A, B, 1.0, 0)
