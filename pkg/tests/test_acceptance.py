"""End-to-end acceptance suite.

Each test covers one acceptance criterion, prints a single PASS/FAIL line
(visible under ``pytest -s`` or in the captured output of a failing run),
and asserts the criterion at its stated tolerance.  Tolerances here are the
contract; they must not be loosened to make a run pass.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from exorder import (
    Exponential,
    GridSpec,
    PHRModel,
    RateVector,
    SampleStream,
    Uniform,
    Weibull,
    check_disp,
    check_more_si,
    check_pqd,
    check_st,
    check_star,
    conditional_family,
    copula_distribution_free_check,
    empirical_copula,
    empirical_tau,
    exact_min_corr,
    exact_tau_min_pair,
    exact_tau_min_pair_fraction,
    ks_critical_value,
    ks_distance,
    min_law,
    phr_pair_copulas,
    phr_si_check,
    phr_transform,
    sample_min_pair,
    sample_order_stats,
    spacing_law,
)
from exorder.runner import selftest

RATE_VECTORS = [
    RateVector((1.0, 2.0)),
    RateVector((1.0, 2.0, 3.0)),
    RateVector((0.5, 1.0, 2.0, 8.0)),
    RateVector((1.0, 1.5, 4.0)),
]
SEED = 20260825


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{criterion}: {detail}"


def spacing_pairs(rv):
    for i in range(1, rv.n):
        for j in range(i + 1, rv.n + 1):
            yield i, j, spacing_law(rv.homogenize(), i, j), spacing_law(rv, i, j)


def test_criterion_1_kendall_tau_exact_and_monte_carlo():
    start = time.perf_counter()
    ok = exact_tau_min_pair_fraction(2, 2) == Fraction(1, 3)
    ok &= exact_tau_min_pair_fraction(3, 3) == Fraction(1, 5)
    m = 1_000_000
    worst = 0.0
    for n, i in ((2, 2), (3, 3)):
        pairs = sample_min_pair(
            RateVector((1.0,) * n), i, SampleStream.from_label(SEED, f"acc1:{n}:{i}"), m
        )
        gap = abs(empirical_tau(pairs) - exact_tau_min_pair(n, i))
        worst = max(worst, gap)
        ok &= gap <= 0.005
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30.0
    _report(
        "1 (exact tau + Monte Carlo)",
        ok,
        f"max |empirical - exact| = {worst:.2e} at m={m}, {elapsed:.1f}s",
    )


def test_criterion_2_dispersive_order_of_spacings():
    worst = 0.0
    count = 0
    for rv in RATE_VECTORS:
        for i, j, hom, het in spacing_pairs(rv):
            v = check_disp(hom, het, tolerance=1e-9)
            worst = max(worst, v.max_violation)
            count += 1
            assert v.holds, (rv.rates, i, j, v)
    _report(
        "2 (dispersive order)",
        worst <= 1e-9,
        f"{count} spacing pairs, max violation {worst:.2e} <= 1e-9",
    )


def test_criterion_3_star_and_st_orders_with_composition():
    worst = 0.0
    count = 0
    for rv in RATE_VECTORS:
        for i, j, hom, het in spacing_pairs(rv):
            vs = check_star(hom, het, tolerance=1e-9)
            vt = check_st(hom, het, tolerance=1e-9)
            worst = max(worst, vs.max_violation, vt.max_violation)
            count += 2
            assert vs.holds and vt.holds, (rv.rates, i, j)
    # Composition: on random instances where star and st both hold,
    # dispersive must follow.
    rng = np.random.default_rng(SEED)
    violations = 0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        rv = RateVector(tuple(np.round(rng.uniform(0.25, 6.0, n), 4)))
        i = int(rng.integers(1, n))
        j = int(rng.integers(i + 1, n + 1))
        hom, het = spacing_law(rv.homogenize(), i, j), spacing_law(rv, i, j)
        if check_star(hom, het).holds and check_st(hom, het).holds:
            if not check_disp(hom, het).holds:
                violations += 1
    ok = worst <= 1e-9 and violations == 0
    _report(
        "3 (star + st orders, composition suite)",
        ok,
        f"{count} fixed checks (max violation {worst:.2e}), "
        f"200 random instances, {violations} composition violations",
    )


def test_criterion_4_stochastically_increasing_comparison():
    grid = GridSpec(199, 19)
    cases = [(RateVector((1.0, 2.0, 3.0)), (2, 3)), (RateVector((0.5, 1.0, 2.0, 8.0)), (2, 3, 4))]
    worst = 0.0
    count = 0
    for rv, indices in cases:
        hom = rv.homogenize()
        for i in indices:
            v = check_more_si(
                conditional_family(rv, i),
                min_law(rv),
                conditional_family(hom, i),
                min_law(hom),
                grid,
                tolerance=1e-8,
            )
            worst = max(worst, v.max_violation)
            count += 1
            assert v.holds, (rv.rates, i, v)
    _report(
        "4 (SI comparison het vs hom)",
        worst <= 1e-8,
        f"{count} (rates, i) cases on {grid.describe()}, max violation {worst:.2e}",
    )


def test_criterion_5_minimum_correlation_inequality():
    # Exact closed forms first.
    gap22 = abs(exact_min_corr(RateVector((1.0, 2.0)), 2) - 2.0 / math.sqrt(33.0))
    gap_hom = abs(exact_min_corr(RateVector((1.0, 1.0)), 2) - 1.0 / math.sqrt(5.0))
    ok = gap22 <= 1e-12 and gap_hom <= 1e-12
    # Heterogeneity never increases the correlation with the minimum.
    for rv in RATE_VECTORS:
        hom = rv.homogenize()
        for j in range(2, rv.n + 1):
            ok &= exact_min_corr(rv, j) <= exact_min_corr(hom, j) + 1e-12
    # Monte Carlo cross-check of the exact value.
    m = 1_000_000
    rv = RateVector((1.0, 2.0, 3.0))
    pairs = sample_min_pair(rv, 2, SampleStream.from_label(SEED, "acc5"), m)
    mc = float(np.corrcoef(pairs[:, 0], pairs[:, 1])[0, 1])
    mc_gap = abs(mc - exact_min_corr(rv, 2))
    ok &= mc_gap <= 0.005
    _report(
        "5 (correlation with the minimum)",
        ok,
        f"closed-form gaps {max(gap22, gap_hom):.1e} <= 1e-12, "
        f"MC gap {mc_gap:.2e} <= 5e-3 at m={m}",
    )


def test_criterion_6_proportional_hazards_reduction():
    rv = RateVector((1.0, 2.0, 3.0))
    model = PHRModel(Weibull(2.0), rv)
    ok = True
    worst = 0.0
    for i in (2, 3):
        v = phr_si_check(model, i, master_seed=SEED, m=100_000)
        ok &= v.holds
        worst = max(worst, v.max_violation)
    raw, transformed = phr_pair_copulas(model, 2, master_seed=SEED, m=100_000)
    identical = bool(np.array_equal(raw.values, transformed.values))
    ok &= identical
    # Transformed marginals must be exponential with the model rates.
    m = 100_000
    stream = SampleStream.from_label(SEED, "acc6:marginals")
    mat = np.asarray(model.baseline.survival_inverse(
        (1.0 - stream.uniforms((m, rv.n))) ** (1.0 / np.asarray(rv.rates))
    ))
    r = phr_transform(model, mat)
    ks_ok = all(
        ks_distance(r[:, k], Exponential(lam).cdf) < ks_critical_value(m, 0.01)
        for k, lam in enumerate(rv.rates)
    )
    ok &= ks_ok
    _report(
        "6 (proportional-hazards reduction)",
        ok,
        f"SI violation {worst:.2e}, copulas identical={identical}, "
        f"KS at 1% on {rv.n} transformed marginals={ks_ok}",
    )


def test_criterion_7_exact_construction_selftest():
    outcome = selftest(6, seed=SEED, instances=50)
    ok = (
        outcome["passed"]
        and outcome["max_spacing_gap"] <= 1e-12
        and outcome["max_marginal_gap"] <= 1e-8
    )
    _report(
        "7 (spacing-law selftest)",
        ok,
        f"{outcome['instances']} instances, permutation-oracle gap "
        f"{outcome['max_spacing_gap']:.1e} <= 1e-12, "
        f"convolution gap {outcome['max_marginal_gap']:.1e} <= 1e-8",
    )


def test_criterion_8_distribution_free_copula():
    v = copula_distribution_free_check(
        3, 3, Exponential(1.0), Uniform(0.0, 1.0), m=100_000, master_seed=SEED
    )
    _report(
        "8 (distribution-free copula)",
        v.holds,
        f"sup distance {v.max_violation:.2e} <= {v.tolerance:.2e} (two 1% radii)",
    )


def test_criterion_9_pqd_comparison():
    rv = RateVector((1.0, 2.0, 3.0))
    hom = rv.homogenize()
    m = 100_000
    ok = True
    worst, tol = 0.0, 0.0
    for i in (2, 3):
        het_pairs = sample_min_pair(rv, i, SampleStream.from_label(SEED, f"acc9:het:{i}"), m)
        hom_pairs = sample_min_pair(hom, i, SampleStream.from_label(SEED, f"acc9:hom:{i}"), m)
        v = check_pqd(empirical_copula(het_pairs), empirical_copula(hom_pairs))
        ok &= v.holds
        worst, tol = max(worst, v.max_violation), v.tolerance
    _report(
        "9 (PQD comparison het vs hom)",
        ok,
        f"max violation {worst:.2e} <= {tol:.2e} at m={m}",
    )
