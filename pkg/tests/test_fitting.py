import itertools
import math

import numpy as np
import pytest

from bytepremium.errors import ConvergenceError, DisconnectedGraphError, UnknownLanguageError
from bytepremium.estimation import PairwiseObservation
from bytepremium.fitting import FitConfig, fit_premiums, ratio_mse
from bytepremium.tags import LanguageTag
from conftest import synthetic_tags


def consistent_observations(tags, premiums, pairs=None):
    """Observations built straight from a generator table (the oracle)."""
    pairs = pairs if pairs is not None else itertools.permutations(range(len(tags)), 2)
    return [PairwiseObservation(tags[i], tags[j], premiums[i] / premiums[j], 100) for i, j in pairs]


@pytest.mark.parametrize("mode", ["log-ls", "raw-mse"])
def test_recovers_generator_table(rng, mode):
    tags = synthetic_tags(12)
    gen = np.exp(rng.normal(0, 0.6, 12))
    gen /= gen[0]
    res = fit_premiums(consistent_observations(tags, gen), tags[0], FitConfig(mode=mode))
    for t, g in zip(tags, gen):
        assert res.table[t] == pytest.approx(g, abs=1e-8)
    assert res.table[tags[0]] == 1.0
    assert res.objective < 1e-12


def test_single_observation():
    a, ref = LanguageTag("aaa", "latn"), LanguageTag("eng", "latn")
    res = fit_premiums([PairwiseObservation(a, ref, 2.0)], ref)
    assert res.table[a] == pytest.approx(2.0, abs=1e-12)
    assert res.table[ref] == 1.0


def test_sparse_consistent_graph_recovered(rng):
    # a spanning path plus random chords; still exactly consistent
    tags = synthetic_tags(30)
    gen = np.exp(rng.normal(0, 0.5, 30))
    gen /= gen[3]
    pairs = [(i, i + 1) for i in range(29)] + [tuple(rng.choice(30, 2, replace=False)) for _ in range(20)]
    res = fit_premiums(consistent_observations(tags, gen, pairs), tags[3])
    assert max(abs(res.table[t] - g) for t, g in zip(tags, gen)) < 1e-8


def _noisy_problem(rng, n=20, noise=0.1):
    tags = synthetic_tags(n)
    gen = np.exp(rng.normal(0, 0.5, n))
    obs = [PairwiseObservation(tags[i], tags[j], gen[i] / gen[j] * math.exp(rng.normal(0, noise)), 1)
           for i, j in itertools.permutations(range(n), 2)]
    return tags, obs


def _numeric_grad(table, obs, tags, ref, h=1e-6):
    x = np.log([table[t] for t in tags])
    def f(x):
        p = dict(zip(tags, np.exp(x)))
        return sum((p[o.lang_a] / p[o.lang_b] - o.premium) ** 2 for o in obs) / len(obs)
    g = np.zeros(len(x))
    for i, t in enumerate(tags):
        if t == ref:
            continue
        e = np.zeros(len(x)); e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def test_raw_mse_is_stationary_and_beats_log_ls(rng):
    tags, obs = _noisy_problem(rng)
    raw = fit_premiums(obs, tags[0])
    logls = fit_premiums(obs, tags[0], FitConfig(mode="log-ls"))
    assert raw.objective <= logls.objective
    assert raw.objective == pytest.approx(ratio_mse(raw.table, obs), rel=1e-12)
    # independent central-difference gradient of the ratio MSE
    assert np.max(np.abs(_numeric_grad(raw.table, obs, tags, tags[0]))) < 1e-7
    assert np.max(np.abs(_numeric_grad(logls.table, obs, tags, tags[0]))) > 1e-5


def test_gradient_direction_reaches_same_optimum(rng):
    tags, obs = _noisy_problem(rng, n=8)
    gn = fit_premiums(obs, tags[0])
    gd = fit_premiums(obs, tags[0], FitConfig(direction="gradient", grad_tol=1e-9, max_iters=200_000))
    for t in tags:
        assert gd.table[t] == pytest.approx(gn.table[t], rel=1e-6)


def test_deterministic(rng):
    tags, obs = _noisy_problem(rng, n=10)
    a = fit_premiums(obs, tags[2])
    b = fit_premiums(list(obs), tags[2])
    assert a.table.premiums == b.table.premiums and a.objective == b.objective


def test_segment_weighting_changes_fit():
    ref, a = LanguageTag("eng", "latn"), LanguageTag("aaa", "latn")
    obs = [PairwiseObservation(a, ref, 2.0, 1), PairwiseObservation(a, ref, 3.0, 3)]
    plain = fit_premiums(obs, ref).table[a]
    weighted = fit_premiums(obs, ref, FitConfig(weighting="segments")).table[a]
    assert plain == pytest.approx(2.5, abs=1e-9)
    assert weighted == pytest.approx(2.75, abs=1e-9)


def test_disconnected_graph_reports_components():
    t = synthetic_tags(4)
    obs = [PairwiseObservation(t[0], t[1], 2.0), PairwiseObservation(t[2], t[3], 3.0)]
    with pytest.raises(DisconnectedGraphError) as exc:
        fit_premiums(obs, t[0])
    assert sorted(map(tuple, exc.value.components)) == [(t[0], t[1]), (t[2], t[3])]


def test_unknown_reference():
    t = synthetic_tags(3)
    with pytest.raises(UnknownLanguageError):
        fit_premiums([PairwiseObservation(t[0], t[1], 2.0)], t[2])


def test_nonconvergence_carries_best_iterate(rng):
    tags, obs = _noisy_problem(rng, n=10)
    with pytest.raises(ConvergenceError) as exc:
        fit_premiums(obs, tags[0], FitConfig(direction="gradient", max_iters=3))
    best = exc.value.best
    assert best is not None and not best.converged and best.iterations == 3
    assert best.table[tags[0]] == 1.0


def test_large_sparse_problem(rng):
    # 188 languages and 2656 directed pairs, as in the NLLB setting
    n, m = 188, 2656
    tags = synthetic_tags(n)
    gen = np.exp(rng.normal(0, 0.5, n))
    gen /= gen[0]
    pairs = {(i, i + 1) for i in range(n - 1)}
    while len(pairs) < m:
        i, j = rng.choice(n, 2, replace=False)
        pairs.add((int(i), int(j)))
    res = fit_premiums(consistent_observations(tags, gen, sorted(pairs)), tags[0])
    assert res.objective < 1e-12
    assert max(abs(res.table[t] - g) for t, g in zip(tags, gen)) < 1e-6
