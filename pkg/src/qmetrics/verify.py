"""Seeded property suites.

Each suite returns a plain dict with a `passed` flag and the worst observed
margins, so the CLI can emit it as JSON and the test suite can assert on it.
Sizes and seeds are fixed so CI runs are deterministic.
"""

from __future__ import annotations

import math

import numpy as np

from .channels import depolarizing_channel, monotonicity_experiment, pushforward_family, random_tpcp
from .estimation import cramer_rao_experiment, equality_condition_residual, sld_optimal_povm
from .families import bloch3, random_full_rank, rot3_mixture
from .gauge import PhaseAssignment, apply_gauge, minimizing_gauge_1p
from .linalg import relative_entropy
from .metrics import (
    CF_SLD,
    c_l_information,
    c_upsilon_states,
    classical_fisher,
    kmb_information,
    mc_metric,
    sld_information,
)


def _min_eig(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((m + m.T) / 2.0).min())


def sandwich_suite(n_families: int = 200, seed: int = 42) -> dict:
    """Matrix ordering bound <= invariant lower bound <= gauged information,
    plus agreement of the two SLD computation routes, on seeded random
    full-rank families (d <= 4, p <= 3)."""
    rng = np.random.default_rng(seed)
    worst_lower = math.inf   # min eig of (C_L - H)
    worst_upper = math.inf   # min eig of (C_Upsilon - C_L)
    worst_engine = 0.0       # max deviation between the two SLD routes
    for i in range(n_families):
        d = 2 + i % 3
        p = 1 + i % 3
        fam = random_full_rank(d=d, nparams=p, seed=seed * 100_000 + i)
        theta = rng.uniform(-0.3, 0.3, size=p)
        h_sld = sld_information(fam, theta)
        cl = c_l_information(fam, theta)
        cu = c_upsilon_states(fam, theta)
        engine = mc_metric(fam, theta, CF_SLD)
        worst_lower = min(worst_lower, _min_eig(cl - h_sld))
        worst_upper = min(worst_upper, _min_eig(cu - cl))
        worst_engine = max(worst_engine, float(np.max(np.abs(engine - h_sld))))
    passed = worst_lower >= -1e-8 and worst_upper >= -1e-8 and worst_engine <= 1e-8
    return {
        "suite": "sandwich",
        "n_families": n_families,
        "worst_lower_margin": worst_lower,
        "worst_upper_margin": worst_upper,
        "worst_engine_deviation": worst_engine,
        "passed": passed,
    }


def gauge_suite(n_families: int = 20, n_gauges: int = 50, seed: int = 42) -> dict:
    """Minimizing gauge closes the gap to the invariant lower bound on
    one-parameter families; random gauges never go below it."""
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    worst_violation = 0.0
    for i in range(n_families):
        d = 2 + i % 3
        fam = random_full_rank(d=d, nparams=1, seed=seed * 7_000 + i)
        # Smooth random phase perturbation so the starting gauge is generic.
        a = rng.uniform(-1.0, 1.0, size=d)
        b = rng.uniform(0.5, 2.0, size=d)
        c = rng.uniform(0.0, 2.0 * math.pi, size=d)
        perturbed = apply_gauge(
            fam, PhaseAssignment.from_callable(lambda th, a=a, b=b, c=c: a * np.sin(b * th[0] + c))
        )
        lo, hi = -0.5, 0.5
        pa = minimizing_gauge_1p(perturbed, lo, hi, steps=512)
        minimized = apply_gauge(perturbed, pa)
        grid = np.linspace(lo, hi, 513)
        t_eval = np.array([grid[256]])
        cl = float(c_l_information(fam, t_eval)[0, 0])
        cu_min = float(c_upsilon_states(minimized, t_eval)[0, 0])
        worst_gap = max(worst_gap, abs(cu_min - cl))
        for g in range(n_gauges):
            a2 = rng.uniform(-1.0, 1.0, size=d)
            b2 = rng.uniform(0.5, 2.0, size=d)
            c2 = rng.uniform(0.0, 2.0 * math.pi, size=d)
            gauged = apply_gauge(
                fam,
                PhaseAssignment.from_callable(
                    lambda th, a=a2, b=b2, c=c2: a * np.sin(b * th[0] + c)
                ),
            )
            cu = float(c_upsilon_states(gauged, t_eval)[0, 0])
            worst_violation = min(worst_violation, cu - cl)
    passed = worst_gap <= 1e-6 and worst_violation >= -1e-9
    return {
        "suite": "gauge",
        "n_families": n_families,
        "n_gauges": n_gauges,
        "worst_minimized_gap": worst_gap,
        "worst_lower_violation": worst_violation,
        "passed": passed,
    }


def monotone_suite(
    n_channels: int = 100, n_families: int = 10, seed: int = 42
) -> dict:
    """The bound metric never increases under random channels, while the
    invariant lower bound does increase in the depolarized-mixture
    configuration (the suite asserts that the violation exists)."""
    rng = np.random.default_rng(seed)
    worst_sld_increase = -math.inf
    families = [random_full_rank(d=3, nparams=1, seed=seed * 11_000 + i) for i in range(n_families)]
    thetas = rng.uniform(-0.3, 0.3, size=n_families)
    for j in range(n_channels):
        ch = random_tpcp(3, kraus_count=1 + j % 4, seed=seed * 13_000 + j)
        fam = families[j % n_families]
        theta = np.array([thetas[j % n_families]])
        before = float(sld_information(fam, theta)[0, 0])
        after = float(sld_information(pushforward_family(ch, fam), theta)[0, 0])
        worst_sld_increase = max(worst_sld_increase, after - before)
    report = monotonicity_experiment(
        rot3_mixture(0.1), "cl", depolarizing_channel(3, 0.5), np.array([0.3])
    )
    cl_delta = float(report.delta[0, 0])
    expected_delta = (1 - 0.5) * (8.0 / 3.0 - 8.0 * 0.1)
    passed = (
        worst_sld_increase <= 1e-8
        and cl_delta > 0.0
        and abs(cl_delta - expected_delta) <= 1e-6
    )
    return {
        "suite": "monotone",
        "n_channels": n_channels,
        "worst_sld_increase": worst_sld_increase,
        "cl_violation_delta": cl_delta,
        "cl_violation_expected": expected_delta,
        "passed": passed,
    }


def crlb_suite(seed: int = 42, n: int = 10_000, reps: int = 500) -> dict:
    """Monte Carlo Cramer-Rao check on the two-level family along its radial
    parameter with the optimal measurement."""
    from .families import directional_family

    base = bloch3()
    anchor = np.array([0.5, 0.8, 0.3])
    fam = directional_family(base, anchor, np.array([1.0, 0.0, 0.0]))
    povm = sld_optimal_povm(fam, [0.0])
    report = cramer_rao_experiment(
        fam, 0.0, povm, n=n, reps=reps, seed=seed, interval=(-0.4, 0.4)
    )
    target = (1.0 - 0.5 ** 2) / n
    rel_err = abs(report.empirical_variance - target) / target
    floor_ok = report.empirical_variance >= 0.95 / (n * report.fisher)
    residual = equality_condition_residual(fam, [0.0], povm)
    passed = rel_err <= 0.15 and floor_ok and report.fisher <= report.sld_bound + 1e-8
    return {
        "suite": "crlb",
        "n": n,
        "reps": reps,
        "empirical_variance": report.empirical_variance,
        "target_variance": target,
        "relative_error": rel_err,
        "fisher": report.fisher,
        "sld_bound": report.sld_bound,
        "equality_residual": residual,
        "passed": passed,
    }


def kmb_limit_suite(n_families: int = 10, seed: int = 42) -> dict:
    """Relative entropy curvature converges to the logarithmic-mean
    information with an O(eps) error (error ratio across a decade in [5, 20])."""
    rng = np.random.default_rng(seed)
    ratios = []
    for i in range(n_families):
        d = 2 + i % 3
        fam = random_full_rank(d=d, nparams=1, seed=seed * 17_000 + i)
        t0 = float(rng.uniform(-0.2, 0.2))
        h_kmb = float(kmb_information(fam, [t0])[0, 0])
        errs = {}
        for eps in (1e-2, 1e-3):
            dval = relative_entropy(fam.rho([t0]), fam.rho([t0 + eps]))
            errs[eps] = abs(2.0 * dval / eps ** 2 - h_kmb)
        ratios.append(errs[1e-2] / errs[1e-3])
    passed = all(5.0 <= r <= 20.0 for r in ratios)
    return {
        "suite": "kmb-limit",
        "n_families": n_families,
        "error_ratios": ratios,
        "passed": passed,
    }


def achievability_suite(n_families: int = 50, seed: int = 42) -> dict:
    """The score-diagonalizing measurement attains the quantum bound on
    one-parameter families, with vanishing attainment-condition residual."""
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    worst_residual = 0.0
    for i in range(n_families):
        d = 2 + i % 3
        fam = random_full_rank(d=d, nparams=1, seed=seed * 23_000 + i)
        theta = np.array([float(rng.uniform(-0.2, 0.2))])
        povm = sld_optimal_povm(fam, theta)
        f = float(classical_fisher(fam, theta, povm)[0, 0])
        h_sld = float(sld_information(fam, theta)[0, 0])
        worst_gap = max(worst_gap, abs(f - h_sld))
        worst_residual = max(worst_residual, equality_condition_residual(fam, theta, povm))
    passed = worst_gap <= 1e-6 and worst_residual <= 1e-7
    return {
        "suite": "achievability",
        "n_families": n_families,
        "worst_fisher_gap": worst_gap,
        "worst_equality_residual": worst_residual,
        "passed": passed,
    }


SUITES = {
    "sandwich": sandwich_suite,
    "gauge": gauge_suite,
    "monotone": monotone_suite,
    "crlb": crlb_suite,
    "kmb-limit": kmb_limit_suite,
}
