from qmetrics import verify


def test_suite_registry_names():
    assert set(verify.SUITES) == {"sandwich", "gauge", "monotone", "crlb", "kmb-limit"}


def test_sandwich_suite_passes_and_reports_margins():
    report = verify.sandwich_suite(n_families=30, seed=42)
    assert report["passed"]
    assert report["worst_lower_margin"] >= -1e-8
    assert report["worst_upper_margin"] >= -1e-8
    assert report["worst_engine_deviation"] <= 1e-8


def test_monotone_suite_finds_the_expected_violation():
    report = verify.monotone_suite(n_channels=20, seed=42)
    assert report["passed"]
    assert report["cl_violation_delta"] > 0
    assert report["worst_sld_increase"] <= 1e-8


def test_achievability_suite_small():
    report = verify.achievability_suite(n_families=10, seed=42)
    assert report["passed"]


def test_suites_deterministic_per_seed():
    a = verify.kmb_limit_suite(n_families=3, seed=5)
    b = verify.kmb_limit_suite(n_families=3, seed=5)
    assert a == b
