import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmetrics.errors import MissingGauge, ValidationError
from qmetrics.families import (
    ParametricFamily,
    SpectralPresentation,
    bloch3,
    pure_rotation,
    random_full_rank,
)
from qmetrics.gauge import (
    PhaseAssignment,
    apply_gauge,
    integrability_test,
    minimizing_gauge_1p,
    zero_gauge,
)
from qmetrics.metrics import c_l_information, c_upsilon_states, sld_information


def sin_gauge(a, b, c):
    return PhaseAssignment.from_callable(lambda th: a * np.sin(b * th[0] + c))


def test_apply_gauge_preserves_the_state():
    fam = random_full_rank(d=3, nparams=1, seed=1)
    gauged = apply_gauge(fam, sin_gauge(np.array([0.4, -0.8, 0.2]),
                                        np.array([1.0, 2.0, 0.5]),
                                        np.array([0.1, 0.2, 0.3])))
    for t in (-0.2, 0.0, 0.3):
        assert np.allclose(gauged.rho([t]), fam.rho([t]), atol=1e-12)
        sp = gauged.spectral(np.array([t]))
        assert np.allclose(sp.reconstruct(), fam.rho([t]), atol=1e-12)


def test_apply_gauge_requires_presentation():
    fam = bloch3()
    blind = ParametricFamily(dim=2, nparams=3, evaluate=fam.evaluate,
                             spectral=None, domain=fam.domain, name="blind")
    with pytest.raises(MissingGauge):
        apply_gauge(blind, zero_gauge(2))


def test_zero_gauge_is_identity():
    fam = random_full_rank(d=2, nparams=1, seed=2)
    gauged = apply_gauge(fam, zero_gauge(2))
    a = c_upsilon_states(fam, [0.1])
    b = c_upsilon_states(gauged, [0.1])
    assert np.max(np.abs(a - b)) < 1e-12


@settings(deadline=None, max_examples=10)
@given(seed=st.integers(0, 2_000))
def test_lower_bound_is_gauge_invariant_but_gauged_information_is_not(seed):
    rng = np.random.default_rng(seed)
    fam = random_full_rank(d=3, nparams=1, seed=seed)
    gauged = apply_gauge(fam, sin_gauge(rng.uniform(-1, 1, 3),
                                        rng.uniform(0.5, 2, 3),
                                        rng.uniform(0, 2 * math.pi, 3)))
    t = [0.1]
    assert np.max(np.abs(c_l_information(gauged, t) - c_l_information(fam, t))) < 1e-8
    assert c_upsilon_states(gauged, t)[0, 0] >= c_l_information(fam, t)[0, 0] - 1e-9


def test_minimizing_gauge_closes_the_gap():
    fam = random_full_rank(d=3, nparams=1, seed=4)
    perturbed = apply_gauge(fam, sin_gauge(np.array([0.9, -0.5, 0.3]),
                                           np.array([1.7, 0.6, 1.1]),
                                           np.array([0.0, 1.0, 2.0])))
    pa = minimizing_gauge_1p(perturbed, -0.5, 0.5, steps=512)
    minimized = apply_gauge(perturbed, pa)
    for t in (-0.25, 0.0, 0.37):  # nodes and off-node points
        cu = c_upsilon_states(minimized, [t])[0, 0]
        cl = c_l_information(fam, [t])[0, 0]
        assert abs(cu - cl) < 1e-6


def test_minimizing_gauge_requires_one_parameter():
    with pytest.raises(ValidationError):
        minimizing_gauge_1p(bloch3(), 0.0, 1.0)


def test_phase_assignment_sample_interpolation():
    grid = np.linspace(0.0, 1.0, 5)
    samples = np.vstack([grid**2, -grid])
    pa = PhaseAssignment.from_samples(grid, samples)
    a = pa.alphas([0.5])
    assert np.allclose(a, [0.25, -0.5], atol=0.05)  # piecewise linear
    with pytest.raises(ValidationError):
        PhaseAssignment.from_samples(grid, samples[:, :3])


def test_integrability_obstruction_on_two_level_family():
    theta = np.array([0.5, 1.2, 0.5])
    rep = integrability_test(bloch3(), theta)
    assert not rep.passed
    # the (theta, phi) pair for each eigenvector carries the obstruction
    values = {(j, l, k): v for (j, l, k, v) in rep.entries}
    expected = math.sin(1.2) / 4.0
    assert abs(abs(values[(0, 1, 2)]) - expected) < 1e-6
    assert abs(abs(values[(1, 1, 2)]) - expected) < 1e-6


def test_real_frame_family_passes_integrability():
    # Two-parameter family with a real rotating frame: all obstruction
    # entries vanish, so a globally minimizing gauge exists.
    def frame(th):
        a, b = float(th[0]), float(th[1])
        ra = np.array([[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1.0]])
        rb = np.array([[1.0, 0, 0], [0, math.cos(b), -math.sin(b)], [0, math.sin(b), math.cos(b)]])
        return (ra @ rb).astype(complex)

    p = np.array([0.5, 0.3, 0.2])

    def evaluate(th):
        v = frame(th)
        return (v * p) @ v.conj().T

    fam = ParametricFamily(
        dim=3, nparams=2, evaluate=evaluate,
        spectral=lambda th: SpectralPresentation(eigenvalues=p.copy(), eigenvectors=frame(th)),
        domain=((-math.inf, math.inf),) * 2, name="real-frame",
    )
    rep = integrability_test(fam, np.array([0.4, 0.7]))
    assert rep.passed
    assert all(abs(v) < 1e-6 for (_, _, _, v) in rep.entries)


def test_minimized_family_dominates_sld_information():
    fam = random_full_rank(d=3, nparams=1, seed=8)
    pa = minimizing_gauge_1p(fam, -0.5, 0.5, steps=512)
    minimized = apply_gauge(fam, pa)
    t = [0.0]
    cu = c_upsilon_states(minimized, t)[0, 0]
    h = sld_information(fam, t)[0, 0]
    assert cu >= h - 1e-8


def test_pure_rotation_already_minimal():
    fam = pure_rotation()
    t = [0.3]
    assert abs(c_upsilon_states(fam, t)[0, 0] - c_l_information(fam, t)[0, 0]) < 1e-10
