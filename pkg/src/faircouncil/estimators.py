"""Expected-margin estimators: exact, Monte Carlo, and asymptotic routes.

The expected margin E|S|, S the total spin of a state, is the quantity that
fixes the state's fair council weight. Exact evaluation uses the structure
of each measure (binomial sums, quadrature over shifted binomials, or the
magnetization law); all binomial terms are assembled in log space so the
routes stay stable up to the population budget.
"""

import math

import numpy as np
from scipy.special import gammaln, xlogy

from .core import (
    ASYMPTOTIC,
    EXACT,
    MONTE_CARLO,
    CommonBelief,
    Independent,
    MarginEstimate,
    MeanField,
    split_budget,
)
from . import meanfield
from .measures import (
    belief_expectation,
    magnetization_pmf,
    validate_model,
    _totals_with_generator,
)

#: Exact routes cost O(N) (times quadrature nodes for belief mixtures);
#: refuse populations beyond this by default rather than stalling.
DEFAULT_POPULATION_BUDGET = 10**7

_CHUNK = 1 << 20

ROOT_2_OVER_PI = math.sqrt(2.0 / math.pi)


#: Binomial sums ignore terms beyond this many standard deviations of the
#: mean; the dropped tail mass is below 1e-300.
_TAIL_SIGMAS = 40.0


def _binom_window(n, p):
    if n <= 4096:
        return 0, n
    sd = math.sqrt(n * p * (1.0 - p))
    lo = int(max(0.0, math.floor(n * p - _TAIL_SIGMAS * sd - 32.0)))
    hi = int(min(n, math.ceil(n * p + _TAIL_SIGMAS * sd + 32.0)))
    return lo, hi


def binom_abs_moments(n, ps, center=0.0):
    """E|2K - n - center| for K ~ Binomial(n, p), vectorized over p.

    ``center`` may be scalar or per-p. Each sum runs in log space via
    log-gamma over a window of the binomial support (terms more than 40
    standard deviations out carry less than 1e-300 of the mass); p = 0 and
    p = 1 are exact through xlogy.
    """
    ps = np.atleast_1d(np.asarray(ps, dtype=float))
    centers = np.broadcast_to(np.asarray(center, dtype=float), ps.shape)
    out = np.empty(ps.shape)
    lg_n = gammaln(n + 1.0)
    for i, p in enumerate(ps.ravel()):
        lo, hi = _binom_window(n, p)
        total = 0.0
        for blk in range(lo, hi + 1, _CHUNK):
            k = np.arange(blk, min(blk + _CHUNK, hi + 1), dtype=float)
            logpmf = (lg_n - gammaln(k + 1.0) - gammaln(n - k + 1.0)
                      + xlogy(k, p) + xlogy(n - k, 1.0 - p))
            total += float(np.dot(np.abs(2.0 * k - n - centers.ravel()[i]), np.exp(logpmf)))
        out.ravel()[i] = total
    return out


def binom_mean_abs_deviation(n, ps):
    """E|K - n p| for K ~ Binomial(n, p), via the partial-sum identity
    E|K - np| = 2 np [F_n(m) - F_{n-1}(m-1)], m = floor(np).

    O(1) per p through the regularized incomplete beta; used for the
    coupling moment E|S - N Z|, which is an absolute deviation about the
    conditional mean.
    """
    from scipy.stats import binom

    ps = np.atleast_1d(np.asarray(ps, dtype=float))
    m = np.floor(n * ps)
    upper = binom.cdf(m, n, ps)
    lower = binom.cdf(m - 1.0, n - 1, ps) if n > 1 else np.zeros_like(ps)
    return 2.0 * n * ps * (upper - lower)


def _belief_margin(belief, n, rel_tol=1e-10):
    """Quadrature of the binomial absolute-spin moment over the belief."""

    def f(zs):
        return binom_abs_moments(n, (1.0 + zs) / 2.0)

    return float(belief_expectation(belief, f, rel_tol=rel_tol))


def belief_coupling_moment(belief, n, rel_tol=1e-8):
    """E|S - N Z| under the belief mixture: the mean absolute deviation of
    the vote sum about its conditional mean, integrated over the belief."""

    def f(zs):
        return 2.0 * binom_mean_abs_deviation(n, (1.0 + zs) / 2.0)

    return float(belief_expectation(belief, f, rel_tol=rel_tol))


def expected_margin_exact(model, n, max_population=DEFAULT_POPULATION_BUDGET):
    """Exact E|S| for the model at population n.

    Routes: independent voters use the closed binomial sum; common-belief
    mixtures integrate the shifted-binomial moment over the belief measure;
    mean-field sums |s| against the magnetization law.
    """
    validate_model(model)
    if n < 1:
        raise ValueError("population must be >= 1")
    if n > max_population:
        raise ValueError(
            f"population {n} exceeds the exact-route budget {max_population}; "
            "use the Monte Carlo or asymptotic estimator"
        )
    if isinstance(model, Independent):
        value = float(binom_abs_moments(n, 0.5)[0])
    elif isinstance(model, CommonBelief):
        value = _belief_margin(model.belief, n)
    elif n == 1:
        value = 1.0
    else:
        value = magnetization_pmf(model.coupling, n).abs_moment()
    return MarginEstimate(value=value, std_error=0.0, method=EXACT, samples=0)


def expected_margin_mc(model, n, samples, rng, workers=1):
    """Monte Carlo E|S| from ``samples`` independent outcomes.

    The sample budget is split over ``workers`` disjoint substreams of
    ``rng`` and merged by pooled mean/variance, so a rerun with the same
    (seed, stream_id, workers) reproduces the estimate bit for bit.
    """
    validate_model(model)
    if samples < 2:
        raise ValueError("Monte Carlo needs at least 2 samples")
    count = 0
    total = 0.0
    total_sq = 0.0
    for k, chunk in enumerate(split_budget(samples, workers)):
        if chunk == 0:
            continue
        margins = np.abs(_totals_with_generator(model, n, chunk, rng.worker(k))).astype(float)
        count += chunk
        total += float(margins.sum())
        total_sq += float((margins**2).sum())
    mean = total / count
    var = max(total_sq - count * mean**2, 0.0) / (count - 1)
    return MarginEstimate(
        value=mean,
        std_error=math.sqrt(var / count),
        method=MONTE_CARLO,
        samples=count,
    )


def expected_margin_asymptotic(model, n):
    """Large-N asymptotic E|S|.

    Independent voters: sqrt(2/pi) sqrt(N). Mean field: sqrt(2/pi)
    (1-J)^(-1/2) sqrt(N) below the critical coupling and C(J) N above it;
    J = 1 has no formula and is rejected. Common belief: N mu_bar when the
    mean absolute belief is positive, else the independent square-root law.
    The square-root constant in the positive-correlation regimes follows
    the central-limit argument; for vanishing-belief mixtures it is an
    extrapolation beyond the proven two-sided 1/sqrt(N) sandwich.
    """
    validate_model(model)
    if n < 1:
        raise ValueError("population must be >= 1")
    if isinstance(model, Independent):
        value = ROOT_2_OVER_PI * math.sqrt(n)
    elif isinstance(model, MeanField):
        return meanfield.asymptotic_weight_meanfield(model.coupling, n)
    else:
        from .commonbelief import mu_bar

        mean_abs = mu_bar(model.belief)
        value = n * mean_abs if mean_abs > 0.0 else ROOT_2_OVER_PI * math.sqrt(n)
    return MarginEstimate(value=value, std_error=0.0, method=ASYMPTOTIC, samples=0)


def expected_margin(model, n, method=EXACT, samples=100_000, rng=None, workers=1,
                    max_population=DEFAULT_POPULATION_BUDGET):
    """Dispatch to one of the three estimator routes."""
    if method == EXACT:
        return expected_margin_exact(model, n, max_population=max_population)
    if method == MONTE_CARLO:
        if rng is None:
            raise ValueError("Monte Carlo estimation needs an RngStream")
        return expected_margin_mc(model, n, samples, rng, workers=workers)
    if method == ASYMPTOTIC:
        return expected_margin_asymptotic(model, n)
    raise ValueError(f"unknown estimator method {method!r}")
