import dataclasses
import json
import math

import pytest

import synth
from bytepremium import validation
from bytepremium.errors import InsufficientDataError
from bytepremium.validation import loo_validate, select_variant


def test_noise_free_loo_is_exact(rng):
    for variant in ("I", "II", "III"):
        recs = synth.records(rng, coefs=synth.restrict(synth.TRUE, variant))
        score = loo_validate(recs, [variant]).per_variant[variant]
        assert score.rmse_common < 1e-6
        assert score.rmse_uncommon < 1e-6


def test_split_by_script_commonality(rng):
    recs = synth.records(rng, noise=0.05)
    report = loo_validate(recs)
    s = report.per_variant["I"]
    # latn 12, cyrl 6, deva 7, arab 7 are common; beng 4, hebr 4 are not
    assert (s.n_common, s.n_uncommon) == (32, 8)
    assert report.script_counts["beng"] == 4
    pooled = math.sqrt(sum(e * e for e in s.per_language_errors.values()) / 40)
    recombined = math.sqrt((s.rmse_common ** 2 * 32 + s.rmse_uncommon ** 2 * 8) / 40)
    assert recombined == pytest.approx(pooled, abs=1e-12)
    assert s.rmse == pytest.approx(pooled, abs=1e-12)


def test_threshold_one_means_everything_common(rng):
    s = loo_validate(synth.records(rng, noise=0.05), ["III"], script_count_threshold=1).per_variant["III"]
    assert s.n_uncommon == 0 and s.rmse_uncommon is None
    assert s.n_common == 40


def test_holdout_never_in_training(rng, monkeypatch):
    recs = synth.records(rng, noise=0.05)
    seen = []
    real = validation.fit_regression

    def spy(train, variant, **kw):
        seen.append({r.tag for r in train})
        return real(train, variant, **kw)

    monkeypatch.setattr(validation, "fit_regression", spy)
    loo_validate(recs, ["II"])
    ordered = sorted(r.tag for r in recs)
    assert len(seen) == 40
    for held, train in zip(ordered, seen):
        assert held not in train and len(train) == 39


def test_errors_are_on_clipped_premiums(rng):
    from bytepremium.regression import fit_regression, predict_length_ratio

    recs = synth.records(rng, noise=0.05)
    r0 = recs[0]
    recs[0] = big = dataclasses.replace(r0, byte_premium=9.0, length_ratio=r0.length_ratio * 9.0 / r0.byte_premium)
    s = loo_validate(recs, ["III"]).per_variant["III"]
    model = fit_regression(recs[1:], "III")
    pred = big.bytes_per_char * predict_length_ratio(model, big.features()).value / big.reference_bytes_per_char
    assert s.per_language_errors[big.tag] == pytest.approx(pred - 4.0, abs=1e-12)


def test_deterministic_and_serializable(rng):
    recs = synth.records(rng, noise=0.05)
    a = loo_validate(recs)
    b = loo_validate(list(reversed(recs)))
    assert a.to_json() == b.to_json()
    d = json.loads(a.to_json())
    assert set(d["variants"]) == {"I", "II", "III"}
    table = a.format_table()
    assert "Scripts with count >=5" in table and "Scripts with count <5" in table


def test_variant_I_skips_missing_family(rng):
    recs = synth.records(rng, noise=0.05)
    recs[3] = dataclasses.replace(recs[3], family=None)
    report = loo_validate(recs, ["I", "III"])
    assert report.per_variant["I"].skipped == (recs[3].tag,)
    assert len(report.per_variant["I"].per_language_errors) == 39
    assert len(report.per_variant["III"].per_language_errors) == 40


def test_needs_three_records(rng):
    with pytest.raises(InsufficientDataError):
        loo_validate(synth.records(rng)[:2])


@pytest.mark.parametrize("script,available,expected", [
    ("latn", {"family", "script"}, "I"),
    ("latn", {"script"}, "II"),
    ("latn", set(), "III"),
    ("geor", {"family", "script"}, "III"),
    ("Latn", {"family", "script"}, "I"),
])
def test_select_variant(script, available, expected):
    counts = {"latn": 50, "geor": 2}
    assert select_variant(script, available, counts) == expected
