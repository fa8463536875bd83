"""Dense complex Hermitian kernel.

Gauged eigendecompositions, the symmetric-logarithmic-derivative solve,
quantum relative entropy, and matrix-valued central differences. Everything
here is a pure function of its arguments; matrices are small (d <= 64) and
dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    NoConvergence,
    NotHermitian,
    SingularSecondArgument,
    UnsupportedTangent,
)

# Shared numerical conventions.
HERM_TOL = 1e-10       # max-entry tolerance for Hermiticity checks
RANK_TOL = 1e-12       # eigenvalues below this count as zero
DEGEN_GAP = 1e-6       # eigenvalue pairs closer than this are "degenerate"
DEFAULT_H = 1e-5       # finite-difference step (entries are O(1))


def herm_defect(m: np.ndarray) -> float:
    """Max-entry deviation of m from its own adjoint."""
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending; orthonormal column eigenvectors with the
    largest-modulus component of each vector made real and non-negative."""

    values: np.ndarray   # (d,) real
    vectors: np.ndarray  # (d, d) complex, columns


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus entry is real non-negative.

    This pins the otherwise arbitrary eigenvector phases deterministically,
    so repeated decompositions of the same matrix agree bit for bit.
    """
    v = np.array(vectors, dtype=complex, copy=True)
    for k in range(v.shape[1]):
        i = int(np.argmax(np.abs(v[:, k])))
        z = v[i, k]
        a = abs(z)
        if a > 0.0:
            v[:, k] *= np.conj(z) / a
    return v


def eig_hermitian(m: np.ndarray, check: bool = True) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with a deterministic gauge."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
    if check and herm_defect(m) > HERM_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {herm_defect(m):.3e}")
    try:
        vals, vecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(-vals, kind="stable")
    return EigenSystem(values=vals[order], vectors=fix_phases(vecs[:, order]))


def sld_solve(rho: np.ndarray, drho: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Solve drho = (rho L + L rho) / 2 for the Hermitian score L.

    Works in the eigenbasis of rho: L_jk = 2 A_jk / (p_j + p_k) with A the
    tangent in that basis. Entries with p_j + p_k below rank_tol are set to
    zero; if the tangent has weight there, the score does not determine the
    metric and UnsupportedTangent is raised.
    """
    drho = np.asarray(drho, dtype=complex)
    if herm_defect(drho) > HERM_TOL:
        raise NotHermitian("tangent matrix is not Hermitian")
    if abs(np.trace(drho)) > HERM_TOL:
        raise NotHermitian("tangent matrix is not traceless")
    es = eig_hermitian(rho)
    p = np.clip(es.values, 0.0, None)
    v = es.vectors
    a = v.conj().T @ drho @ v
    denom = p[:, None] + p[None, :]
    off_support = denom <= rank_tol
    if np.any(off_support) and np.max(np.abs(a[off_support])) > 1e-8:
        raise UnsupportedTangent(
            "tangent has weight outside the support of the state"
        )
    lam = np.where(off_support, 0.0, 2.0 * a / np.where(off_support, 1.0, denom))
    lam = v @ lam @ v.conj().T
    return (lam + lam.conj().T) / 2.0


def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Quantum relative entropy tr(rho (ln rho - ln sigma)) in nats.

    sigma must be full rank; rho may be rank deficient (0 ln 0 := 0).
    """
    er = eig_hermitian(rho)
    esig = eig_hermitian(sigma)
    if float(esig.values.min()) < RANK_TOL:
        raise SingularSecondArgument("second argument is rank deficient")
    p = np.clip(er.values, 0.0, None)
    pos = p > RANK_TOL
    s_rho = float(np.sum(p[pos] * np.log(p[pos])))
    # tr(rho ln sigma) via sigma's eigenbasis
    u = esig.vectors
    weights = np.real(np.einsum("ij,ik,kj->j", u.conj(), rho, u))
    s_cross = float(np.sum(weights * np.log(esig.values)))
    return s_rho - s_cross


def central_difference(
    f: Callable[[float], np.ndarray],
    t: float,
    h: float = DEFAULT_H,
    richardson: bool = True,
) -> np.ndarray:
    """Symmetric difference (f(t+h) - f(t-h)) / 2h, optionally with one
    Richardson step combining (4 D_{h/2} - D_h) / 3."""
    if h <= 0.0:
        raise ValueError("step h must be positive")
    d_h = (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)
    if not richardson:
        return d_h
    hh = h / 2.0
    d_hh = (np.asarray(f(t + hh)) - np.asarray(f(t - hh))) / (2.0 * hh)
    return (4.0 * d_hh - d_h) / 3.0
