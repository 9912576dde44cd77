"""Acceptance suite: one numbered check per headline claim, each printing a
pass line with the measured values (run with ``pytest -s`` to see them all).

Check 06a is expected to fail and is kept that way deliberately: it asserts
local minimality of the deficit at the halved-margin weights (E|S|/2 per
state). Direct enumeration, reproduced in the check itself, shows the
deficit still decreasing in every upward direction there, because the
deficit's per-coordinate vertex sits at the full expected margin E|S|
(check 06c). The companion check 06b verifies the closed-form deficit
against literal enumeration at those same weights to full precision.
"""

import json
import math
import time

import numpy as np
import pytest

from faircouncil import (
    CommonBelief,
    CouncilSpec,
    DiscreteSymmetric,
    Independent,
    MeanField,
    PointMassZero,
    RngStream,
    StraffinFamily,
    UniformSymmetric,
    delta,
    distribution_distance,
    expected_margin_exact,
    margin_bound_check,
    scaling_fit,
    second_moment,
    solve_cj,
)
from faircouncil.cli import main as cli_main
from faircouncil.measures import pmf_exact, sample_outcomes

from oracles import all_outcomes, brute_force_margin, enumerate_delta

ROOT_2_OVER_PI = math.sqrt(2.0 / math.pi)
GRID_8_14 = [2**e for e in range(8, 15)]

BELIEF_TEST_SET = [
    PointMassZero(),
    UniformSymmetric(1.0),
    UniformSymmetric(0.5),
    DiscreteSymmetric([(-0.4, 0.5), (0.4, 0.5)]),
    DiscreteSymmetric([(-0.5, 0.5), (0.5, 0.5)]),
]


def report(number, label, detail):
    print(f"acceptance {number}: {label}: PASS ({detail})")


def test_01_square_root_law_constant():
    start = time.perf_counter()
    value = expected_margin_exact(Independent(), 10_000).value / 100.0
    elapsed = time.perf_counter() - start
    assert value == pytest.approx(ROOT_2_OVER_PI, rel=0.005)
    assert elapsed < 1.0
    report("01", "square-root-law constant", f"{value:.6f} vs {ROOT_2_OVER_PI:.6f}, {elapsed:.3f}s")


def test_02_subcritical_mean_field_constant():
    start = time.perf_counter()
    value = expected_margin_exact(MeanField(0.5), 10_000).value / 100.0
    elapsed = time.perf_counter() - start
    target = ROOT_2_OVER_PI / math.sqrt(0.5)
    assert value == pytest.approx(target, rel=0.02)
    assert elapsed < 1.0
    report("02", "subcritical mean field", f"{value:.6f} vs {target:.6f}, {elapsed:.3f}s")


def test_03_supercritical_mean_field_constant():
    start = time.perf_counter()
    c = solve_cj(1.5)
    value = expected_margin_exact(MeanField(1.5), 10_000).value / 10_000.0
    elapsed = time.perf_counter() - start
    assert abs(math.tanh(1.5 * c) - c) <= 1e-12
    assert value == pytest.approx(c, rel=0.02)
    assert elapsed < 1.0
    report("03", "supercritical mean field", f"{value:.6f} vs C(1.5)={c:.6f}, {elapsed:.3f}s")


def test_04_phase_transition_in_fitted_exponent():
    start = time.perf_counter()
    below = scaling_fit(lambda n: MeanField(0.9), GRID_8_14).exponent
    above = scaling_fit(lambda n: MeanField(1.1), GRID_8_14).exponent
    elapsed = time.perf_counter() - start
    assert below == pytest.approx(0.50, abs=0.05)
    assert above == pytest.approx(1.00, abs=0.05)
    assert elapsed < 10.0
    report("04", "phase transition", f"alpha(0.9)={below:.3f}, alpha(1.1)={above:.3f}, {elapsed:.1f}s")


def test_05_interpolating_exponents():
    start = time.perf_counter()
    fitted = {}
    for beta in (0.0, 0.25, 0.75, 1.5):
        family = StraffinFamily(1.0, beta)
        fit = scaling_fit(lambda n: CommonBelief(family(n)), GRID_8_14)
        target = max(1.0 - beta, 0.5)
        assert fit.exponent == pytest.approx(target, abs=0.07), beta
        fitted[beta] = fit.exponent
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report("05", "interpolating exponents",
           ", ".join(f"beta={b}: {a:.3f}" for b, a in fitted.items()) + f", {elapsed:.1f}s")


HALF_MARGIN_WEIGHTS = (0.5, 0.75, 0.9375)  # E|S|/2 per the enumeration oracle
FULL_MARGIN_WEIGHTS = (1.0, 1.5, 1.875)
IND135_STATES = [(1, Independent()), (3, Independent()), (5, Independent())]
IND135 = CouncilSpec([("a", 1, Independent()), ("b", 3, Independent()),
                      ("c", 5, Independent())])


def _perturbed(weights, index, step):
    w = list(weights)
    w[index] += step
    return w


def test_06a_deficit_minimum_at_half_margin_weights():
    """Expected to fail: the halved weights are not a local minimizer."""
    start = time.perf_counter()
    base = enumerate_delta(IND135_STATES, HALF_MARGIN_WEIGHTS)
    perturbed = {
        (i, step): enumerate_delta(IND135_STATES, _perturbed(HALF_MARGIN_WEIGHTS, i, step))
        for i in range(3)
        for step in (+0.1, -0.1)
    }
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    assert all(value > base for value in perturbed.values()), (
        "deficit is not minimal at the halved-margin weights "
        f"{HALF_MARGIN_WEIGHTS}: Delta={base:.6f} but perturbations give "
        + ", ".join(f"{k}: {v:.6f}" for k, v in sorted(perturbed.items()))
        + " (the per-coordinate vertex sits at the full margin E|S|, "
        "see the companion checks)"
    )
    report("06a", "half-margin minimality", f"Delta={base:.6f}, {elapsed:.2f}s")


def test_06b_closed_form_deficit_matches_enumeration():
    start = time.perf_counter()
    enum = enumerate_delta(IND135_STATES, HALF_MARGIN_WEIGHTS)
    semi = delta(IND135, HALF_MARGIN_WEIGHTS, mode="semi_exact").value
    elapsed = time.perf_counter() - start
    assert semi == pytest.approx(enum, abs=1e-10)
    assert elapsed < 1.0
    report("06b", "closed-form deficit vs 512-outcome enumeration",
           f"{semi:.12f} vs {enum:.12f}, {elapsed:.2f}s")


def test_06c_deficit_minimum_at_full_margin_weights():
    start = time.perf_counter()
    base = enumerate_delta(IND135_STATES, FULL_MARGIN_WEIGHTS)
    worst_gap = math.inf
    for i in range(3):
        for step in (+0.1, -0.1):
            value = enumerate_delta(IND135_STATES, _perturbed(FULL_MARGIN_WEIGHTS, i, step))
            worst_gap = min(worst_gap, value - base)
            assert value > base, (i, step, value, base)
    semi = delta(IND135, FULL_MARGIN_WEIGHTS, mode="semi_exact").value
    assert semi == pytest.approx(base, abs=1e-10)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report("06c", "full-margin minimality",
           f"Delta={base:.6f}, smallest perturbation gap {worst_gap:.6f}, {elapsed:.2f}s")


def test_07_pairwise_covariance_equals_belief_second_moment():
    n = 8
    cases = [
        (PointMassZero(), 0.0),
        (UniformSymmetric(1.0), 1.0 / 3.0),
        (DiscreteSymmetric([(-0.4, 0.5), (0.4, 0.5)]), 0.16),
    ]
    outcomes = all_outcomes(n)
    results = []
    for belief, expected in cases:
        model = CommonBelief(belief)
        cov = 0.0
        for outcome in outcomes:
            cov += pmf_exact(model, outcome) * float(outcome[0]) * float(outcome[1])
        assert cov == pytest.approx(second_moment(belief), abs=1e-9)
        assert cov == pytest.approx(expected, abs=1e-9)
        results.append(f"{expected:.4f}")
    report("07", "voter covariance", "covariances " + ", ".join(results))


def test_08_sandwich_and_transport_bounds():
    start = time.perf_counter()
    checked = 0
    for belief in BELIEF_TEST_SET:
        for n in (100, 1000, 10_000):
            bound = 1.0 / math.sqrt(n)
            rep = margin_bound_check(belief, n)
            assert rep.sandwich_gap <= bound, (belief, n, rep)
            assert rep.coupling_gap <= bound, (belief, n, rep)
            assert distribution_distance(belief, n) <= bound, (belief, n)
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    report("08", "1/sqrt(N) bounds", f"{checked} (belief, N) pairs, {elapsed:.1f}s")


def test_09_transport_distance_strictly_decreases():
    distances = [distribution_distance(UniformSymmetric(1.0), n) for n in (100, 1000, 10_000)]
    assert distances[0] > distances[1] > distances[2]
    report("09", "weak convergence", " > ".join(f"{d:.2e}" for d in distances))


def test_10_oracle_equivalence_sweep():
    start = time.perf_counter()
    models = [
        Independent(),
        CommonBelief(UniformSymmetric(1.0)),
        CommonBelief(DiscreteSymmetric([(-0.4, 0.5), (0.4, 0.5)])),
        MeanField(1.5),
    ]
    for model in models:
        for n in range(1, 17):
            brute = brute_force_margin(model, n)
            structured = expected_margin_exact(model, n).value
            assert structured == pytest.approx(brute, abs=1e-9), (model, n)
    sweep_elapsed = time.perf_counter() - start

    draws = 1_000_000
    sampler_models = [Independent(), CommonBelief(UniformSymmetric(1.0)), MeanField(1.5)]
    for model in sampler_models:
        for n in (3, 6):
            outcomes = sample_outcomes(model, n, draws, RngStream(101))
            codes = ((outcomes > 0) << np.arange(n)).sum(axis=1)
            counts = np.bincount(codes, minlength=2**n)
            space = all_outcomes(n)
            space_codes = ((space > 0) << np.arange(n)).sum(axis=1)
            for code, outcome in zip(space_codes, space):
                p = pmf_exact(model, outcome)
                stderr = math.sqrt(p * (1.0 - p) / draws)
                assert abs(counts[code] / draws - p) <= 5.0 * stderr, (model, n, outcome)
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    report("10", "oracle equivalence",
           f"2^N sweep {sweep_elapsed:.1f}s, samplers at 5 sigma, total {elapsed:.1f}s")


def test_11_cli_reruns_are_byte_identical(tmp_path, capsys):
    config = tmp_path / "union.json"
    config.write_text(json.dumps({
        "states": [
            {"name": "a", "population": 400, "model": {"type": "mean_field", "coupling": 1.5}},
            {"name": "b", "population": 900, "model": {"type": "independent"}},
            {"name": "c", "population": 100, "model": {
                "type": "common_belief", "belief": {"type": "uniform", "a": 0.5}}},
        ],
    }))
    pairs = []
    for args, suffix in [
        (["council-sim", "--config", str(config), "--trials", "30000",
          "--seed", "6", "--workers", "4"], "sim"),
        (["margin", "--model", "mean-field", "--J", "1.5", "--N", "500",
          "--method", "monte-carlo", "--trials", "20000", "--seed", "8",
          "--workers", "3", "--format", "jsonl"], "margin"),
    ]:
        a = tmp_path / f"{suffix}_a.out"
        b = tmp_path / f"{suffix}_b.out"
        assert cli_main(args + ["--out", str(a)]) == 0
        assert cli_main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        pairs.append(suffix)
    capsys.readouterr()
    report("11", "reproducible CLI", f"byte-identical reruns: {', '.join(pairs)}")
