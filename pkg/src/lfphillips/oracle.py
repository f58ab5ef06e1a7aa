"""Synthetic data generation and brute-force reference estimators.

These exist so the test suite can validate the production estimators against
implementations that share no code with them: the OLS check solves the
normal equations by explicit Gauss-Jordan elimination, and the cumulative
check is an exhaustive grid search over the constrained objective.

Randomness comes from numpy's PCG64, which has a stable cross-platform
stream, so every Monte-Carlo number in the suite is reproducible from a seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EstimationError, InputError
from .series import AnnualSeries

GROWTH_BOUND = 0.02  # synthetic growth reflects at +/-2%/yr, like the observed Japanese range
GROWTH_STEP_SIGMA = 0.004


@dataclass(frozen=True)
class SynthSpec:
    """Fully determines one synthetic (predictor, response) dataset."""

    intercept: float
    slope: float
    lag: int = 0
    break_year: int | None = None
    post_intercept: float | None = None
    post_slope: float | None = None
    noise_sigma: float = 0.0
    length: int = 40
    seed: int = 0
    start_year: int = 1980

    def __post_init__(self) -> None:
        if self.noise_sigma < 0:
            raise InputError("noise_sigma must be >= 0")
        if self.length < 10:
            raise InputError("length must be >= 10")
        if self.break_year is not None:
            if self.post_intercept is None or self.post_slope is None:
                raise InputError("a break needs post-segment coefficients")


def _bounded_walk(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random walk in growth space reflecting at +/-GROWTH_BOUND."""
    x = np.empty(n)
    level = float(rng.uniform(-GROWTH_BOUND / 2, GROWTH_BOUND / 2))
    for i in range(n):
        level += float(rng.normal(0.0, GROWTH_STEP_SIGMA))
        if level > GROWTH_BOUND:
            level = 2 * GROWTH_BOUND - level
        elif level < -GROWTH_BOUND:
            level = -2 * GROWTH_BOUND - level
        x[i] = level
    return x


def generate(spec: SynthSpec) -> tuple[AnnualSeries, AnnualSeries]:
    """Seeded (predictor, response) pair from a lagged linear model.

    The predictor is indexed so that the response at year t reads the
    predictor at year t - lag; both series span the same calendar years plus
    whatever the lag requires.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n = spec.length
    x = _bounded_walk(rng, n)
    years = np.arange(spec.start_year, spec.start_year + n)
    y = np.empty(n)
    for i, year in enumerate(years):
        if spec.break_year is not None and year >= spec.break_year:
            a, b = spec.post_intercept, spec.post_slope
        else:
            a, b = spec.intercept, spec.slope
        y[i] = a + b * x[i]
    if spec.noise_sigma > 0:
        y += rng.normal(0.0, spec.noise_sigma, size=n)
    predictor = AnnualSeries(spec.start_year - spec.lag, tuple(x),
                             label="synthetic predictor", units="fraction-per-year")
    response = AnnualSeries(spec.start_year, tuple(y),
                            label="synthetic response", units="fraction-per-year")
    return predictor, response


def generate_two_predictors(
    intercept: float,
    slope_a: float,
    slope_b: float,
    noise_sigma: float = 0.0,
    length: int = 40,
    seed: int = 0,
    start_year: int = 1980,
) -> tuple[AnnualSeries, AnnualSeries, AnnualSeries]:
    """Two independent bounded-walk predictors and the linear response."""
    if length < 10:
        raise InputError("length must be >= 10")
    rng = np.random.Generator(np.random.PCG64(seed))
    xa = _bounded_walk(rng, length)
    xb = _bounded_walk(rng, length)
    y = intercept + slope_a * xa + slope_b * xb
    if noise_sigma > 0:
        y += rng.normal(0.0, noise_sigma, size=length)
    mk = lambda v, label: AnnualSeries(start_year, tuple(v), label=label,
                                       units="fraction-per-year")
    return mk(xa, "xa"), mk(xb, "xb"), mk(y, "y")


def brute_force_ols(X, y) -> np.ndarray:
    """Normal-equations solve by Gauss-Jordan with partial pivoting.

    Deliberately avoids numpy's solvers so it is independent of the
    production path. ``X`` includes the intercept column if one is wanted.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    k = X.shape[1]
    A = [[float(sum(X[:, i] * X[:, j])) for j in range(k)] + [float(sum(X[:, i] * y))]
         for i in range(k)]
    for col in range(k):
        pivot = max(range(col, k), key=lambda r: abs(A[r][col]))
        if abs(A[pivot][col]) < 1e-300:
            raise EstimationError("singular normal equations")
        A[col], A[pivot] = A[pivot], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for r in range(k):
            if r != col and A[r][col] != 0.0:
                f = A[r][col]
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
    return np.array([A[i][k] for i in range(k)])


def constrained_cumulative_sse(alpha: float, beta: float,
                               x: np.ndarray, y: np.ndarray) -> float:
    """Objective of the endpoint-constrained cumulative fit for one predictor."""
    c_obs = np.cumsum(y)
    c_pred = np.cumsum(alpha + beta * np.asarray(x, dtype=float))
    return float(np.sum((c_obs - c_pred) ** 2))


def brute_force_constrained(
    x,
    y,
    beta_grid,
) -> tuple[float, float]:
    """Grid search over the slope of the endpoint-constrained cumulative fit.

    For each candidate slope the intercept is pinned by the constraint
    C_pred(T) = C_obs(T); the exhaustive minimum over the grid is returned as
    (intercept, slope).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(y)
    cx_total = float(np.sum(x))
    cy_total = float(np.sum(y))
    best = None
    for beta in beta_grid:
        alpha = (cy_total - beta * cx_total) / n
        sse = constrained_cumulative_sse(alpha, beta, x, y)
        if best is None or sse < best[0]:
            best = (sse, alpha, float(beta))
    assert best is not None
    return best[1], best[2]
