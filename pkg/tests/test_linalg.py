import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmetrics.errors import NotHermitian, SingularSecondArgument, UnsupportedTangent
from qmetrics.linalg import (
    central_difference,
    eig_hermitian,
    fix_phases,
    relative_entropy,
    sld_solve,
)


def random_hermitian(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (x + x.conj().T) / 2


def random_density(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = x @ x.conj().T + 1e-3 * np.eye(d)
    return m / np.trace(m).real


@settings(deadline=None, max_examples=50)
@given(seed=st.integers(0, 10_000), d=st.integers(2, 5))
def test_eig_reconstructs_and_is_sorted(seed, d):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, d)
    es = eig_hermitian(m)
    v = es.vectors
    assert np.allclose((v * es.values) @ v.conj().T, m, atol=1e-10)
    assert np.all(np.diff(es.values) <= 1e-12)  # descending
    assert np.allclose(v.conj().T @ v, np.eye(d), atol=1e-10)


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 10_000), d=st.integers(2, 4))
def test_eigenvector_gauge_is_deterministic(seed, d):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, d)
    v1 = eig_hermitian(m).vectors
    v2 = eig_hermitian(m.copy()).vectors
    assert np.array_equal(v1, v2)
    # largest-modulus entry of each column is real non-negative
    for k in range(d):
        col = v1[:, k]
        top = col[np.argmax(np.abs(col))]
        assert abs(top.imag) < 1e-12 and top.real >= 0


def test_fix_phases_idempotent():
    rng = np.random.default_rng(3)
    v = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
    w = fix_phases(v)
    assert np.allclose(fix_phases(w), w)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


@settings(deadline=None, max_examples=50)
@given(seed=st.integers(0, 10_000), d=st.integers(2, 4))
def test_sld_solve_residual(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, d)
    t = random_hermitian(rng, d)
    t = t - np.trace(t).real * np.eye(d) / d  # traceless tangent
    score = sld_solve(rho, t)
    assert np.allclose((rho @ score + score @ rho) / 2, t, atol=1e-9)
    assert np.allclose(score, score.conj().T, atol=1e-12)


def test_sld_solve_rejects_off_support_tangent():
    rho = np.diag([1.0, 0.0]).astype(complex)
    bad = np.diag([-1.0, 1.0]).astype(complex)  # flows weight into the kernel
    with pytest.raises(UnsupportedTangent):
        sld_solve(rho, bad)


@settings(deadline=None, max_examples=50)
@given(seed=st.integers(0, 10_000), d=st.integers(2, 4))
def test_relative_entropy_nonnegative_and_faithful(seed, d):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(rng, d), random_density(rng, d)
    assert relative_entropy(rho, sigma) >= -1e-12
    assert abs(relative_entropy(rho, rho)) < 1e-12


def test_relative_entropy_singular_support():
    rho = np.diag([0.5, 0.5]).astype(complex)
    sigma = np.diag([1.0, 0.0]).astype(complex)
    with pytest.raises(SingularSecondArgument):
        relative_entropy(rho, sigma)


def test_central_difference_accuracy():
    d = central_difference(np.sin, 0.3, h=1e-4)
    assert abs(d - np.cos(0.3)) < 1e-10
