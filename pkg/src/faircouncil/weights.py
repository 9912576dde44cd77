"""Fair council weights and the democracy deficit.

The deficit Delta(w) = E[(P - C)^2] measures how far the weighted council
result C = sum_v w_v chi(S_v) strays from the popular vote sum P. With
states independent of each other and every per-state measure symmetric,
expanding the square gives

    Delta(w) = sum_v E(S_v^2) - 2 sum_v w_v E|S_v| + sum_v w_v^2
               + sum_{v != u} w_v w_u P(S_v = 0) P(S_u = 0),

because S chi(S) = |S| pointwise and E chi(S) = -P(S = 0) under the
ties-vote-no convention. The deficit is therefore quadratic in each weight
with vertex at the state's full expected margin E|S_v| (exactly, whenever
at most one state can tie); that expected margin is the fair weight. The
frequently quoted half-margin variant is not a minimizer: direct
enumeration shows the deficit still decreasing there, and a single-voter
state makes it obvious (w = E|S| = 1 gives zero deficit, w = 1/2 does not).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import estimators
from .commonbelief import second_moment
from .core import (
    EXACT,
    MONTE_CARLO,
    CommonBelief,
    Independent,
    signs,
    split_budget,
)
from .measures import (
    belief_expectation,
    magnetization_pmf,
    pmf_exact,
    validate_model,
    _totals_with_generator,
)

SEMI_EXACT = "semi_exact"

#: Exact deficits enumerate the product of per-state outcome spaces.
EXACT_POPULATION_CAP = 20


# --------------------------------------------------------------------------
# council specification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StateSpec:
    name: str
    population: int
    model: object

    def __post_init__(self):
        if self.population < 1:
            raise ValueError(f"state {self.name!r} needs population >= 1")
        validate_model(self.model)


@dataclass(frozen=True)
class CouncilSpec:
    """States with their populations and correlation models, plus the
    council quota. quota = 0.5 denotes the simple-majority limit (accept
    only strictly positive weighted sums)."""

    states: tuple
    quota: float = 0.5

    def __init__(self, states, quota=0.5):
        states = tuple(
            s if isinstance(s, StateSpec) else StateSpec(*s) for s in states
        )
        if not states:
            raise ValueError("council needs at least one state")
        names = [s.name for s in states]
        if len(set(names)) != len(names):
            raise ValueError("state names must be unique")
        if not 0.0 < quota < 1.0:
            raise ValueError(f"quota must lie in (0, 1), got {quota}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "quota", float(quota))

    @property
    def total_population(self):
        return sum(s.population for s in self.states)

    @property
    def size(self):
        return len(self.states)


@dataclass(frozen=True)
class WeightVector:
    """Raw fair weights (one per state, aligned with the council order) and
    a max-normalized copy for display. The induced voting system is
    invariant under positive scaling, but the deficit is minimized at the
    raw values only."""

    values: tuple
    normalized: tuple
    margins: tuple = ()

    def __init__(self, values, normalized=None, margins=()):
        values = tuple(float(v) for v in values)
        if not values:
            raise ValueError("weight vector must be non-empty")
        if any(not math.isfinite(v) or v < 0.0 for v in values):
            raise ValueError("weights must be finite and >= 0")
        if normalized is None:
            top = max(values)
            normalized = tuple(v / top for v in values) if top > 0 else values
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "normalized", tuple(float(v) for v in normalized))
        object.__setattr__(self, "margins", tuple(margins))


@dataclass(frozen=True)
class DeltaEstimate:
    """A value of the democracy deficit with its evaluation route."""

    value: float
    method: str
    std_error: float = 0.0
    trials: int = 0

    def __post_init__(self):
        if self.method not in (EXACT, SEMI_EXACT, MONTE_CARLO):
            raise ValueError(f"unknown deficit method {self.method!r}")
        if self.value < 0.0:
            raise ValueError(f"deficit must be >= 0, got {self.value}")
        if self.method != MONTE_CARLO and self.std_error != 0.0:
            raise ValueError(f"{self.method} deficits must have std_error 0")


def _as_weights(weights, council):
    if isinstance(weights, WeightVector):
        arr = np.asarray(weights.values, dtype=float)
    else:
        arr = np.asarray(weights, dtype=float)
    if arr.shape != (council.size,):
        raise ValueError(f"expected {council.size} weights, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weights must be finite")
    return arr


# --------------------------------------------------------------------------
# per-state moments
# --------------------------------------------------------------------------


def state_margin(state, samples=100_000, rng=None, workers=1,
                 max_population=estimators.DEFAULT_POPULATION_BUDGET):
    """E|S| for one state; exact route preferred, Monte Carlo fallback."""
    try:
        return estimators.expected_margin_exact(state.model, state.population,
                                                max_population=max_population)
    except ValueError:
        if rng is None:
            raise
        return estimators.expected_margin_mc(state.model, state.population,
                                             samples, rng, workers=workers)


def state_second_moment(state):
    """Exact E(S^2) per model: N for independent voters,
    N + N(N-1) * second_moment(mu) for belief mixtures, and the
    magnetization-law moment for the interaction model."""
    n = state.population
    model = state.model
    if isinstance(model, Independent):
        return float(n)
    if isinstance(model, CommonBelief):
        return n + n * (n - 1) * second_moment(model.belief)
    if n == 1:
        return 1.0
    return magnetization_pmf(model.coupling, n).abs_moment(power=2)


def state_tie_probability(state):
    """P(S = 0); zero for odd populations."""
    n = state.population
    if n % 2:
        return 0.0
    model = state.model
    half = n // 2
    log_central = math.lgamma(n + 1) - 2.0 * math.lgamma(half + 1)
    if isinstance(model, Independent):
        return math.exp(log_central - n * math.log(2.0))
    if isinstance(model, CommonBelief):
        def mass(zs):
            p = (1.0 + zs) / 2.0
            return np.power(p * (1.0 - p), half)

        return math.exp(log_central) * float(belief_expectation(model.belief, mass))
    return magnetization_pmf(model.coupling, n).prob_of(0)


# --------------------------------------------------------------------------
# optimal weights
# --------------------------------------------------------------------------


def optimal_weights(council, samples=100_000, rng=None, workers=1,
                    max_population=estimators.DEFAULT_POPULATION_BUDGET):
    """Mean-square-optimal weights: each state's expected margin E|S|.

    The deficit is quadratic in each weight with vertex at E|S_v| (see the
    module docstring), so these weights minimize it exactly whenever at
    most one state has an even population; residual tie correlations shift
    the optimum by O(P(tie)^2) otherwise.
    """
    margins = tuple(
        state_margin(s, samples=samples, rng=rng, workers=workers,
                     max_population=max_population)
        for s in council.states
    )
    return WeightVector(values=[m.value for m in margins], margins=margins)


# --------------------------------------------------------------------------
# deficit evaluation
# --------------------------------------------------------------------------


def _state_outcome_table(state, weight):
    """Aggregate a state's 2^N outcomes by their total spin: probabilities
    binomial(N, k) * pmf(representative outcome), spins, weighted votes."""
    n = state.population
    probs = np.empty(n + 1)
    for k in range(n + 1):
        rep = np.concatenate([np.ones(k, dtype=np.int8), -np.ones(n - k, dtype=np.int8)])
        probs[k] = math.comb(n, k) * pmf_exact(state.model, rep)
    s = 2 * np.arange(n + 1) - n
    return probs, s.astype(float), weight * signs(s).astype(float)


def _delta_exact(council, weights):
    if council.total_population > EXACT_POPULATION_CAP:
        raise ValueError(
            f"exact deficit enumerates 2^{council.total_population} outcomes; "
            f"cap is total population {EXACT_POPULATION_CAP}"
        )
    probs = np.array([1.0])
    popular = np.array([0.0])
    council_sum = np.array([0.0])
    for state, w in zip(council.states, weights):
        p_k, s_k, c_k = _state_outcome_table(state, w)
        probs = (probs[:, None] * p_k[None, :]).ravel()
        popular = (popular[:, None] + s_k[None, :]).ravel()
        council_sum = (council_sum[:, None] + c_k[None, :]).ravel()
    value = float(np.sum(probs * (popular - council_sum) ** 2))
    return DeltaEstimate(value=max(value, 0.0), method=EXACT)


def _delta_semi_exact(council, weights):
    margins = np.array([state_margin(s).value for s in council.states])
    seconds = np.array([state_second_moment(s) for s in council.states])
    ties = np.array([state_tie_probability(s) for s in council.states])
    w = np.asarray(weights)
    cross = float(np.sum(w * ties) ** 2 - np.sum((w * ties) ** 2))
    value = float(seconds.sum() - 2.0 * np.dot(w, margins) + np.dot(w, w) + cross)
    if value < 0.0:
        if value < -1e-9:
            raise ArithmeticError(f"semi-exact deficit came out negative: {value}")
        value = 0.0
    return DeltaEstimate(value=value, method=SEMI_EXACT)


def _delta_monte_carlo(council, weights, trials, rng, workers):
    if rng is None:
        raise ValueError("Monte Carlo deficits need an RngStream")
    if trials < 2:
        raise ValueError("need at least 2 trials")
    w = np.asarray(weights)
    count = 0
    total = 0.0
    total_sq = 0.0
    for k, chunk in enumerate(split_budget(trials, workers)):
        if chunk == 0:
            continue
        gen = rng.worker(k)
        popular = np.zeros(chunk)
        council_sum = np.zeros(chunk)
        for state, wv in zip(council.states, w):
            totals = _totals_with_generator(state.model, state.population, chunk, gen)
            popular += totals
            council_sum += wv * signs(totals)
        sq = (popular - council_sum) ** 2
        count += chunk
        total += float(sq.sum())
        total_sq += float((sq**2).sum())
    mean = total / count
    var = max(total_sq - count * mean**2, 0.0) / (count - 1)
    return DeltaEstimate(value=mean, method=MONTE_CARLO,
                         std_error=math.sqrt(var / count), trials=count)


def delta(council, weights, mode=SEMI_EXACT, trials=100_000, rng=None, workers=1):
    """Democracy deficit of the council under the given weights.

    ``exact`` enumerates the product of per-state outcome spaces (total
    population capped); ``semi_exact`` evaluates the closed-form expansion
    from exact per-state moments; ``monte_carlo`` simulates the popular and
    council votes directly. The deficit is defined for arbitrary finite
    weights (council simulation itself requires nonnegative ones).
    """
    w = _as_weights(weights, council)
    if mode == EXACT:
        return _delta_exact(council, w)
    if mode == SEMI_EXACT:
        return _delta_semi_exact(council, w)
    if mode == MONTE_CARLO:
        return _delta_monte_carlo(council, w, trials, rng, workers)
    raise ValueError(f"unknown deficit mode {mode!r}")


def ray_scale(council, direction):
    """Scale c* minimizing the deficit along c * direction, from the
    closed-form quadratic: c* = sum(u E|S|) / (sum u^2 + tie cross-term)."""
    u = _as_weights(direction, council)
    margins = np.array([state_margin(s).value for s in council.states])
    ties = np.array([state_tie_probability(s) for s in council.states])
    cross = float(np.sum(u * ties) ** 2 - np.sum((u * ties) ** 2))
    denom = float(np.dot(u, u)) + cross
    if denom <= 0.0:
        raise ValueError("direction must be a nonzero weight vector")
    return float(np.dot(u, margins)) / denom


# --------------------------------------------------------------------------
# minimizer verification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PerturbationCheck:
    state: str
    step: float
    delta_value: float
    not_below: bool


@dataclass(frozen=True)
class VertexCheck:
    state: str
    vertex: float
    expected_margin: float
    within_tol: bool


@dataclass(frozen=True)
class MinimizerReport:
    delta_at_weights: float
    perturbations: tuple
    vertices: tuple

    @property
    def ok(self):
        return all(p.not_below for p in self.perturbations) and all(
            v.within_tol for v in self.vertices
        )

    def violations(self):
        return tuple(c for c in self.perturbations + self.vertices
                     if not (c.not_below if isinstance(c, PerturbationCheck) else c.within_tol))


def verify_minimizer(council, w_star, step, mode=SEMI_EXACT, vertex_tol=1e-9):
    """Check that the deficit does not drop under coordinate perturbations
    of the given weights, and that its per-coordinate quadratic vertex sits
    at the state's expected margin.

    Violations are reported, not raised: councils with two or more
    even-population states have tie correlations that legitimately shift
    the vertices.
    """
    if not step > 0.0:
        raise ValueError("step must be > 0")
    w0 = _as_weights(w_star, council)
    base = delta(council, w0, mode=mode).value
    perturbations = []
    vertices = []
    for i, state in enumerate(council.states):
        plus = w0.copy()
        plus[i] += step
        minus = w0.copy()
        minus[i] -= step
        d_plus = delta(council, plus, mode=mode).value
        d_minus = delta(council, minus, mode=mode).value
        perturbations.append(PerturbationCheck(state.name, +step, d_plus, d_plus >= base))
        perturbations.append(PerturbationCheck(state.name, -step, d_minus, d_minus >= base))
        curvature = d_plus - 2.0 * base + d_minus
        if curvature <= 0.0:
            vertices.append(VertexCheck(state.name, math.nan, math.nan, False))
            continue
        vertex = w0[i] - step * (d_plus - d_minus) / (2.0 * curvature)
        target = state_margin(state).value
        vertices.append(VertexCheck(state.name, vertex, target,
                                    abs(vertex - target) <= vertex_tol))
    return MinimizerReport(
        delta_at_weights=base,
        perturbations=tuple(perturbations),
        vertices=tuple(vertices),
    )
