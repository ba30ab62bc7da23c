"""Fit one premium per language from pairwise observations.

The target is the mean squared error between predicted ratios
``BP_a / BP_b`` and observed pairwise premiums, with the reference pinned at
1.0. Variables live in log space (``x = log BP``) so positivity is free and
the gauge is a single pinned coordinate.

Two modes:

``log-ls``
    Closed-form weighted least squares on ``x_a - x_b = log(obs)``. This is
    a Laplacian solve on the observation graph; exact and convex, but it
    minimises log error rather than ratio error.
``raw-mse``
    Starts from the ``log-ls`` solution and descends on the ratio MSE with a
    backtracking (Armijo) line search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ConvergenceError, DisconnectedGraphError, UnknownLanguageError
from .estimation import PairwiseObservation
from .table import PremiumTable
from .tags import LanguageTag, as_tag

MODES = ("log-ls", "raw-mse")
DIRECTIONS = ("gauss-newton", "gradient")
WEIGHTINGS = ("none", "segments")


@dataclass(frozen=True)
class FitConfig:
    mode: str = "raw-mse"
    max_iters: int = 10_000
    grad_tol: float = 1e-10
    direction: str = "gauss-newton"
    step_init: float = 1.0
    step_shrink: float = 0.5
    armijo: float = 1e-4
    # weight observations by segment count; not part of the original method
    weighting: str = "none"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}")
        if not 0 < self.step_shrink < 1:
            raise ValueError("step_shrink must be in (0, 1)")
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")


@dataclass(frozen=True)
class FitResult:
    table: PremiumTable
    objective: float
    iterations: int
    grad_norm: float
    mode: str
    converged: bool = True


class _Problem:
    def __init__(self, observations: Sequence[PairwiseObservation], reference: LanguageTag, weighting: str):
        tags = sorted({o.lang_a for o in observations} | {o.lang_b for o in observations})
        if reference not in tags:
            raise UnknownLanguageError(reference, "reference does not appear in any observation")
        self.tags = tags
        index = {t: i for i, t in enumerate(tags)}
        self.n = len(tags)
        self.ref = index[reference]
        self.a = np.array([index[o.lang_a] for o in observations], dtype=np.intp)
        self.b = np.array([index[o.lang_b] for o in observations], dtype=np.intp)
        self.obs = np.array([o.premium for o in observations], dtype=float)
        if weighting == "segments":
            w = np.array([o.n_segments for o in observations], dtype=float)
        else:
            w = np.ones(len(observations))
        self.w = w / w.sum()
        self.free = np.array([i for i in range(self.n) if i != self.ref], dtype=np.intp)

    def components(self) -> list[list[LanguageTag]]:
        adj = coo_matrix((np.ones(len(self.a)), (self.a, self.b)), shape=(self.n, self.n))
        k, labels = connected_components(adj, directed=False)
        groups: list[list[LanguageTag]] = [[] for _ in range(k)]
        for i, lab in enumerate(labels):
            groups[lab].append(self.tags[i])
        return groups

    def laplacian(self, weights: np.ndarray) -> np.ndarray:
        L = np.zeros((self.n, self.n))
        np.add.at(L, (self.a, self.a), weights)
        np.add.at(L, (self.b, self.b), weights)
        np.add.at(L, (self.a, self.b), -weights)
        np.add.at(L, (self.b, self.a), -weights)
        return L

    def incidence_t(self, values: np.ndarray) -> np.ndarray:
        """``B^T v`` for the signed edge-incidence matrix ``B`` (row k: +1 at a_k, -1 at b_k)."""
        out = np.zeros(self.n)
        np.add.at(out, self.a, values)
        np.add.at(out, self.b, -values)
        return out

    def log_least_squares(self) -> np.ndarray:
        L = self.laplacian(self.w)
        rhs = self.incidence_t(self.w * np.log(self.obs))
        f = self.free
        x = np.zeros(self.n)
        if len(f):
            x[f] = scipy.linalg.solve(L[np.ix_(f, f)], rhs[f], assume_a="pos")
        return x

    def evaluate(self, x: np.ndarray):
        ratio = np.exp(x[self.a] - x[self.b])
        resid = ratio - self.obs
        obj = float(np.sum(self.w * resid * resid))
        grad = self.incidence_t(2.0 * self.w * resid * ratio)
        grad[self.ref] = 0.0
        return obj, grad, ratio

    def gauss_newton_step(self, grad: np.ndarray, ratio: np.ndarray) -> np.ndarray:
        H = self.laplacian(2.0 * self.w * ratio * ratio)
        f = self.free
        p = np.zeros(self.n)
        p[f] = scipy.linalg.solve(H[np.ix_(f, f)], -grad[f], assume_a="pos")
        return p


def _table(problem: _Problem, x: np.ndarray, reference: LanguageTag, source: str) -> PremiumTable:
    prem = {t: float(math.exp(x[i])) for i, t in enumerate(problem.tags)}
    prem[reference] = 1.0
    return PremiumTable(reference, prem, source)


def fit_premiums(observations: Sequence[PairwiseObservation], reference, config: FitConfig | None = None) -> FitResult:
    """Fit a :class:`PremiumTable` to pairwise observations.

    Raises :class:`DisconnectedGraphError` when some languages share no chain
    of observations with the reference, and :class:`ConvergenceError` (with
    the best iterate attached) when ``raw-mse`` descent stalls.
    """
    config = config or FitConfig()
    reference = as_tag(reference)
    observations = list(observations)
    if not observations:
        raise UnknownLanguageError(reference, "no observations supplied")
    problem = _Problem(observations, reference, config.weighting)
    comps = problem.components()
    if len(comps) > 1:
        raise DisconnectedGraphError(comps)

    x = problem.log_least_squares()
    obj, grad, ratio = problem.evaluate(x)
    gnorm = float(np.max(np.abs(grad))) if problem.n > 1 else 0.0
    source = f"fitted-{config.mode}"
    if config.mode == "log-ls":
        return FitResult(_table(problem, x, reference, source), obj, 0, gnorm, config.mode)

    it = 0
    while gnorm >= config.grad_tol:
        if it >= config.max_iters:
            best = FitResult(_table(problem, x, reference, source), obj, it, gnorm, config.mode, converged=False)
            raise ConvergenceError(
                f"raw-mse fit did not reach gradient norm {config.grad_tol:g} in {config.max_iters} iterations "
                f"(gradient norm {gnorm:.3g}, objective {obj:.6g})", best)
        if config.direction == "gauss-newton":
            p = problem.gauss_newton_step(grad, ratio)
        else:
            p = -grad
        slope = float(grad @ p)
        if not slope < 0:
            p = -grad
            slope = -float(grad @ grad)
        t = config.step_init
        while True:
            x_new = x + t * p
            obj_new, grad_new, ratio_new = problem.evaluate(x_new)
            if obj_new <= obj + config.armijo * t * slope:
                break
            t *= config.step_shrink
            if t < 1e-30:
                best = FitResult(_table(problem, x, reference, source), obj, it, gnorm, config.mode, converged=False)
                raise ConvergenceError(
                    f"line search failed at iteration {it} (gradient norm {gnorm:.3g}); "
                    "the objective is flat to machine precision", best)
        x, obj, grad, ratio = x_new, obj_new, grad_new, ratio_new
        gnorm = float(np.max(np.abs(grad)))
        it += 1
    return FitResult(_table(problem, x, reference, source), obj, it, gnorm, config.mode)


def ratio_mse(table: PremiumTable, observations: Sequence[PairwiseObservation]) -> float:
    """Unweighted mean squared error of table ratios against observed premiums."""
    errs = [(table[o.lang_a] / table[o.lang_b] - o.premium) ** 2 for o in observations]
    return math.fsum(errs) / len(errs)


def with_mode(config: FitConfig, mode: str) -> FitConfig:
    return replace(config, mode=mode)
